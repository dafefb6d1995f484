// Compares the serial reference kernels against the OpenMP ones on the two
// hot paths: principal-series operator application and group-algebra
// convolution. Results must agree bit for bit.

#include <chrono>
#include <cstdio>

#include "diamond/groupalg.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace diamond;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void bench_apply(i64 p, int f, int reps) {
    const int N = groupalg::precision_for(f, 2);
    ParamSet ps = sample(p, f, subset_of(f > 1 ? 1 : 0, f), 7);
    groupalg::GroupContext g(p, f, N);
    weights::Character chi = weights::chi(subset_of(0, f), ps);
    groupalg::PrincipalSeries PS(g, chi);

    groupalg::GroupAlgElem op = groupalg::s_op(g, 3);
    groupalg::PrincipalSeries::Vec v = PS.apply(op, PS.phi_chi(), groupalg::Exec::serial);

    auto t0 = Clock::now();
    groupalg::PrincipalSeries::Vec serial = v;
    for (int i = 0; i < reps; ++i) serial = PS.apply(op, v, groupalg::Exec::serial);
    double t_serial = ms_since(t0);

    t0 = Clock::now();
    groupalg::PrincipalSeries::Vec par = v;
    for (int i = 0; i < reps; ++i) par = PS.apply(op, v, groupalg::Exec::parallel);
    double t_par = ms_since(t0);

    bool same = serial.v == par.v;
    std::printf("apply     q=%-6lld dim=%-6lld serial %8.2f ms   parallel %8.2f ms   speedup %5.2fx   %s\n",
                static_cast<long long>(g.q()), static_cast<long long>(g.q() + 1),
                t_serial / reps, t_par / reps, t_serial / (t_par > 0 ? t_par : 1),
                same ? "match" : "MISMATCH");
}

void bench_convolve(i64 p, int f, int reps) {
    const int N = groupalg::precision_for(f, 2);
    groupalg::GroupContext g(p, f, N);
    groupalg::GroupAlgElem x = groupalg::s_plus_op(g, 1);
    groupalg::GroupAlgElem y = groupalg::s_plus_op(g, 2);

    auto t0 = Clock::now();
    groupalg::GroupAlgElem serial;
    for (int i = 0; i < reps; ++i) serial = groupalg::convolve(g, x, y, groupalg::Exec::serial);
    double t_serial = ms_since(t0);

    t0 = Clock::now();
    groupalg::GroupAlgElem par;
    for (int i = 0; i < reps; ++i) par = groupalg::convolve(g, x, y, groupalg::Exec::parallel);
    double t_par = ms_since(t0);

    bool same = serial.terms.size() == par.terms.size();
    if (same)
        for (const auto& [k, v] : serial.terms) {
            auto it = par.terms.find(k);
            if (it == par.terms.end() || !(it->second == v)) {
                same = false;
                break;
            }
        }
    std::printf("convolve  q=%-6lld terms=%-4zu serial %8.2f ms   parallel %8.2f ms   speedup %5.2fx   %s\n",
                static_cast<long long>(g.q()), x.terms.size(), t_serial / reps, t_par / reps,
                t_serial / (t_par > 0 ? t_par : 1), same ? "match" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not available; parallel falls back to the serial path\n");
#endif
    bench_apply(29, 1, 20);
    bench_apply(29, 2, 5);
    bench_convolve(5, 2, 50);
    bench_convolve(29, 2, 3);
    return 0;
}

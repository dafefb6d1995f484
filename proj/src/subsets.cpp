#include "diamond/subsets.hpp"

#include <algorithm>

namespace diamond {

namespace {

void check_same_f(const SubsetJ& a, const SubsetJ& b) {
    if (a.f != b.f) throw error("subsets: mixed moduli");
}

}  // namespace

SubsetJ subset_of(std::uint32_t bits, int f) {
    if (f < 1 || f > 30) throw error("subset_of: bad f");
    SubsetJ J{bits, f};
    J.bits &= J.mask();
    return J;
}

SubsetJ subset_from_indices(const std::vector<int>& idx, int f) {
    SubsetJ J = subset_of(0, f);
    for (int j : idx) J.bits |= 1u << J.mod(j);
    return J;
}

std::vector<int> subset_indices(const SubsetJ& J) {
    std::vector<int> r;
    for (int j = 0; j < J.f; ++j)
        if (J.contains(j)) r.push_back(j);
    return r;
}

std::vector<SubsetJ> all_subsets(int f) {
    std::vector<SubsetJ> r;
    for (std::uint32_t b = 0; b < (1u << f); ++b) r.push_back(subset_of(b, f));
    return r;
}

SubsetJ shift(const SubsetJ& J, int k) {
    SubsetJ r = subset_of(0, J.f);
    for (int j = 0; j < J.f; ++j)
        if (J.contains(j)) r.bits |= 1u << r.mod(j + k);
    return r;
}

SubsetJ complement(const SubsetJ& J) { return subset_of(~J.bits & J.mask(), J.f); }

SubsetJ set_union(const SubsetJ& a, const SubsetJ& b) {
    check_same_f(a, b);
    return subset_of(a.bits | b.bits, a.f);
}

SubsetJ set_intersect(const SubsetJ& a, const SubsetJ& b) {
    check_same_f(a, b);
    return subset_of(a.bits & b.bits, a.f);
}

SubsetJ set_minus(const SubsetJ& a, const SubsetJ& b) {
    check_same_f(a, b);
    return subset_of(a.bits & ~b.bits, a.f);
}

SubsetJ sym_diff(const SubsetJ& a, const SubsetJ& b) {
    check_same_f(a, b);
    return subset_of(a.bits ^ b.bits, a.f);
}

bool is_subset(const SubsetJ& a, const SubsetJ& b) {
    check_same_f(a, b);
    return (a.bits & ~b.bits) == 0;
}

SubsetJ op_ss(const SubsetJ& J, const SubsetJ& J_rho) { return set_intersect(J, J_rho); }
SubsetJ op_nss(const SubsetJ& J, const SubsetJ& J_rho) { return set_minus(J, J_rho); }
SubsetJ op_boundary(const SubsetJ& J) { return set_minus(J, shift(J, -1)); }
SubsetJ op_delta_ss(const SubsetJ& J, const SubsetJ& J_rho) {
    return op_ss(shift(J, -1), J_rho);
}
SubsetJ op_j_delta(const SubsetJ& J, const SubsetJ& J_rho) {
    return sym_diff(J, op_delta_ss(J, J_rho));
}

DerivedSets derived_ops(const SubsetJ& J, const SubsetJ& J_rho) {
    return DerivedSets{op_ss(J, J_rho),      op_nss(J, J_rho),     complement(J),
                       op_boundary(J),       op_delta_ss(J, J_rho), op_j_delta(J, J_rho)};
}

int ell(const SubsetJ& J, const SubsetJ& J_rho) {
    if (J_rho.full() && !J.empty()) throw error("ell: undefined for full J_rho");
    SubsetJ cur = J;
    int i = 0;
    while (!cur.empty()) {
        cur = op_delta_ss(cur, J_rho);
        ++i;
        if (i > J.f + 1) throw error("ell: chain failed to terminate");
    }
    return i;
}

std::vector<SubsetJ> delta_ss_chain(const SubsetJ& J, const SubsetJ& J_rho) {
    int n = ell(J, J_rho);
    std::vector<SubsetJ> chain;
    chain.reserve(n);
    SubsetJ cur = J;
    for (int i = 0; i < n; ++i) {
        chain.push_back(cur);
        cur = op_delta_ss(cur, J_rho);
    }
    return chain;
}

SubsetJ find_j_star(const SubsetJ& J_rho) {
    if (J_rho.full()) throw error("find_j_star: undefined for full J_rho");
    SubsetJ full = subset_of(SubsetJ{0, J_rho.f}.mask(), J_rho.f);
    std::vector<SubsetJ> hits;
    for (const SubsetJ& J : all_subsets(J_rho.f))
        if (op_j_delta(J, J_rho) == full) hits.push_back(J);
    if (hits.size() != 1) throw error("find_j_star: solution not unique");
    return hits[0];
}

int run_length_after(int j, const SubsetJ& J_rho) {
    if (J_rho.full()) throw error("run_length_after: undefined for full J_rho");
    int k = 0;
    while (J_rho.contains(j + k + 1)) ++k;
    return k;
}

std::vector<Interval> interval_decomposition(const SubsetJ& J_rho) {
    if (J_rho.full()) throw error("interval_decomposition: no decomposition for full set");
    std::vector<Interval> r;
    for (int j = 0; j < J_rho.f; ++j) {
        if (!J_rho.contains(j) || J_rho.contains(j - 1)) continue;
        int k = 0;
        while (J_rho.contains(j + k + 1)) ++k;
        r.push_back(Interval{j, k});
    }
    std::sort(r.begin(), r.end(), [](const Interval& a, const Interval& b) { return a.start < b.start; });
    return r;
}

Exponents exponents(const SubsetJ& J, const SubsetJ& J_rho) {
    SubsetJ bc = op_boundary(complement(J));
    i64 a_ss = 0;
    for (const Interval& iv : interval_decomposition(J_rho))
        if (bc.contains(iv.start + iv.len)) a_ss += iv.len + 1;

    i64 a = a_ss;
    SubsetJ bd = op_boundary(J);
    for (int j = 0; j < J.f; ++j)
        if (!J_rho.contains(j) && bd.contains(j)) ++a;

    i64 b = 0;
    for (const SubsetJ& c : delta_ss_chain(J, J_rho)) b += J.f - 2 * c.size();
    for (const SubsetJ& c : delta_ss_chain(op_ss(J, J_rho), J_rho)) b -= J.f - 2 * c.size();

    return Exponents{a_ss, a, b};
}

std::vector<i64> d_exponent_vector(const SubsetJ& J, const SubsetJ& J_rho) {
    std::vector<i64> m(J.f, 0);
    for (int j = 0; j < J.f; ++j) {
        if (J_rho.contains(j)) continue;
        int k = run_length_after(j, J_rho);
        m[j] = (J.contains(j + k + 1) ? 1 : 0) - (J.contains(j) ? 1 : 0);
    }
    return m;
}

ChainExponents exponents_via_chain(const SubsetJ& J, const SubsetJ& J_rho) {
    const int f = J.f;
    std::vector<i64> cnt_y(f, 0), cnt_x(f, 0), cnt_dinv(f, 0), cnt_d(f, 0);
    i64 b_prefactor = 0;

    auto walk = [&](const SubsetJ& start, i64 s) {
        for (const SubsetJ& c : delta_ss_chain(start, J_rho)) {
            b_prefactor += s * (f - 2 * c.size());
            for (int j = 0; j < f; ++j) {
                bool in = c.contains(j), next = c.contains(j + 1);
                if (in && !next) {
                    (J_rho.contains(j) ? cnt_y[j] : cnt_dinv[j]) += s;
                } else if (!in && next) {
                    (J_rho.contains(j) ? cnt_x[j] : cnt_d[j]) += s;
                }
            }
        }
    };
    walk(J, +1);
    walk(op_ss(J, J_rho), -1);

    ChainExponents r;
    r.a_ss = 0;
    r.a = 0;
    r.p = 0;
    r.d_exp.assign(f, 0);
    i64 beta_from_d = 0;
    for (int j = 0; j < f; ++j) {
        if (J_rho.contains(j)) {
            if (cnt_x[j] != cnt_y[j] || cnt_x[j] < 0)
                throw error("exponents_via_chain: X/Y counts failed to cancel");
            r.a_ss += cnt_x[j];
            r.p += cnt_y[j];
        } else {
            r.a += cnt_dinv[j];
            r.d_exp[j] = cnt_d[j] - cnt_dinv[j];
            beta_from_d += -2 * r.d_exp[j];
        }
    }
    r.a += r.a_ss;
    r.b = b_prefactor + beta_from_d;
    return r;
}

std::string to_string(const SubsetJ& J) {
    std::string s = "{";
    bool first = true;
    for (int j : subset_indices(J)) {
        if (!first) s += ",";
        s += std::to_string(j);
        first = false;
    }
    return s + "}";
}

}  // namespace diamond

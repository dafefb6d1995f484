#include "diamond/params.hpp"

#include <json.hpp>

namespace diamond {

std::uint64_t Rng::next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

i64 Rng::below(i64 n) {
    if (n <= 0) throw error("Rng::below: empty range");
    return static_cast<i64>(next() % static_cast<std::uint64_t>(n));
}

i64 ParamSet::q() const {
    i64 v = 1;
    for (int i = 0; i < f; ++i) v *= p;
    return v;
}

ParamSet ParamSet::make(i64 p, int f, int e, std::vector<i64> r, SubsetJ j_rho,
                        FqElem beta, std::vector<FqElem> d) {
    if (e % f != 0) throw error("ParamSet: f must divide e");
    FqField F(p, e);
    FqElem xi = F.pow(beta, f);
    return ParamSet{p, f, e, std::move(r), j_rho, std::move(F), std::move(beta), std::move(d), std::move(xi)};
}

i64 strict_lo(int f) { return std::max<i64>(12, 2 * f + 1); }
i64 strict_hi(i64 p, int f) { return p - std::max<i64>(15, 2 * f + 3); }

ValidationReport validate(const ParamSet& ps, Mode mode) {
    ValidationReport rep;
    auto bad = [&](const std::string& s) { rep.violations.push_back(s); };

    if (!fp::is_prime(ps.p)) bad("p is not prime");
    if (ps.f < 1) bad("f must be >= 1");
    if (ps.f >= 1 && ps.e % ps.f != 0) bad("f does not divide e");
    if (static_cast<int>(ps.r.size()) != ps.f) bad("r has wrong length");
    if (static_cast<int>(ps.d.size()) != ps.f) bad("d has wrong length");
    if (ps.j_rho.f != ps.f) bad("J_rho modulus mismatch");

    for (int j = 0; j < ps.f && j < static_cast<int>(ps.r.size()); ++j) {
        i64 rj = ps.r[j];
        if (mode == Mode::strict) {
            if (rj < strict_lo(ps.f) || rj > strict_hi(ps.p, ps.f))
                bad("r_" + std::to_string(j) + "=" + std::to_string(rj) +
                    " outside strict window [" + std::to_string(strict_lo(ps.f)) + "," +
                    std::to_string(strict_hi(ps.p, ps.f)) + "]");
        } else {
            if (rj <= 0 || rj >= ps.p - 1)
                bad("r_" + std::to_string(j) + "=" + std::to_string(rj) +
                    " outside relaxed window (0, p-1)");
        }
    }

    for (int j = 0; j < ps.f && j < static_cast<int>(ps.d.size()); ++j) {
        bool zero = ps.F.is_zero(ps.d[j]);
        bool in_rho = ps.j_rho.contains(j);
        if (zero != in_rho)
            bad("d/J_rho coupling violated at j=" + std::to_string(j));
    }

    if (ps.F.is_zero(ps.beta)) bad("beta must be nonzero");
    if (!(ps.F.pow(ps.beta, ps.f) == ps.xi)) bad("xi != beta^f");
    return rep;
}

namespace {

ParamSet sample_impl(i64 p, int f, SubsetJ j_rho, std::uint64_t seed, int e, bool strict) {
    if (!fp::is_prime(p)) throw error("sample: p must be prime");
    if (j_rho.f != f) throw error("sample: J_rho modulus mismatch");
    if (e == 0) e = f;
    i64 lo = strict ? strict_lo(f) : 1;
    i64 hi = strict ? strict_hi(p, f) : p - 2;
    if (lo > hi) {
        if (strict) {
            i64 pmin = strict_lo(f) + std::max<i64>(15, 2 * f + 3);
            while (!fp::is_prime(pmin)) ++pmin;
            throw error("sample: empty r-window at p=" + std::to_string(p) +
                        "; minimal admissible p is " + std::to_string(pmin));
        }
        throw error("sample: empty relaxed r-window at p=" + std::to_string(p));
    }

    Rng rng(seed * 0x100000001b3ull + static_cast<std::uint64_t>(p) * 733 + f);
    std::vector<i64> r(f);
    for (int j = 0; j < f; ++j) r[j] = lo + rng.below(hi - lo + 1);

    FqField F(p, e);
    FqElem beta = F.from_index(1 + rng.below(F.q() - 1));
    std::vector<FqElem> d;
    d.reserve(f);
    for (int j = 0; j < f; ++j) {
        if (j_rho.contains(j))
            d.push_back(F.zero());
        else
            d.push_back(F.from_index(1 + rng.below(F.q() - 1)));
    }
    return ParamSet::make(p, f, e, std::move(r), j_rho, std::move(beta), std::move(d));
}

}  // namespace

ParamSet sample(i64 p, int f, SubsetJ j_rho, std::uint64_t seed, int e) {
    return sample_impl(p, f, j_rho, seed, e, true);
}

ParamSet sample_relaxed(i64 p, int f, SubsetJ j_rho, std::uint64_t seed, int e) {
    return sample_impl(p, f, j_rho, seed, e, false);
}

std::string params_hash(const ParamSet& ps) {
    std::string s = to_json(ps);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

std::string to_json(const ParamSet& ps) {
    nlohmann::json j;
    j["p"] = ps.p;
    j["f"] = ps.f;
    j["e"] = ps.e;
    j["r"] = ps.r;
    j["J_rho"] = subset_indices(ps.j_rho);
    j["beta"] = ps.beta.c;
    nlohmann::json dd = nlohmann::json::array();
    for (const auto& x : ps.d) dd.push_back(x.c);
    j["d"] = dd;
    return j.dump();
}

ParamSet params_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    i64 p = j.at("p").get<i64>();
    int f = j.at("f").get<int>();
    int e = j.contains("e") ? j.at("e").get<int>() : f;
    std::vector<i64> r = j.at("r").get<std::vector<i64>>();
    SubsetJ j_rho = subset_from_indices(j.at("J_rho").get<std::vector<int>>(), f);
    FqField F(p, e);
    FqElem beta = F.from_coeffs(j.at("beta").get<std::vector<i64>>());
    std::vector<FqElem> d;
    for (const auto& x : j.at("d")) d.push_back(F.from_coeffs(x.get<std::vector<i64>>()));
    if (static_cast<int>(r.size()) != f) throw error("params_from_json: r has wrong length");
    if (static_cast<int>(d.size()) != f) throw error("params_from_json: d has wrong length");
    return ParamSet::make(p, f, e, std::move(r), j_rho, std::move(beta), std::move(d));
}

}  // namespace diamond

#include "diamond/groupalg.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace diamond {
namespace groupalg {

int precision_for(int f, int n_ops) { return f * (n_ops + 2) + 2; }

GroupContext::GroupContext(i64 p, int f, int N) : fq_(p, f), w_(p, f, N) {
    const i64 q = fq_.q();
    teich_.reserve(q);
    for (i64 i = 0; i < q; ++i) teich_.push_back(w_.teichmuller(fq_.from_index(i)));

    dlog_.assign(q, -1);
    exp_.assign(q - 1, 0);
    FqElem g = fq_.generator();
    FqElem cur = fq_.one();
    for (i64 k = 0; k < q - 1; ++k) {
        i64 idx = fq_.to_index(cur);
        exp_[k] = idx;
        dlog_[idx] = k;
        cur = fq_.mul(cur, g);
    }

    inv_.assign(q, 0);
    for (i64 i = 1; i < q; ++i) inv_[i] = exp_[(q - 1 - dlog_[i]) % (q - 1)];
}

i64 GroupContext::dlog(i64 index) const {
    if (index <= 0 || index >= q()) throw error("GroupContext::dlog: zero or out of range");
    return dlog_[index];
}

i64 GroupContext::exp_of(i64 k) const {
    i64 m = q() - 1;
    k %= m;
    if (k < 0) k += m;
    return exp_[k];
}

i64 GroupContext::inv_index(i64 index) const {
    if (index <= 0 || index >= q()) throw error("GroupContext::inv_index: zero or out of range");
    return inv_[index];
}

i64 GroupContext::fadd(i64 a, i64 b) const {
    const i64 p = fq_.p();
    i64 out = 0, w = 1;
    for (int i = 0; i < fq_.e(); ++i) {
        out += ((a % p) + (b % p)) % p * w;
        a /= p;
        b /= p;
        w *= p;
    }
    return out;
}

i64 GroupContext::fsub(i64 a, i64 b) const {
    const i64 p = fq_.p();
    i64 out = 0, w = 1;
    for (int i = 0; i < fq_.e(); ++i) {
        out += ((a % p) - (b % p) + p) % p * w;
        a /= p;
        b /= p;
        w *= p;
    }
    return out;
}

i64 GroupContext::fmul(i64 a, i64 b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(dlog_[a] + dlog_[b]) % (q() - 1)];
}

std::uint64_t GroupContext::packi(const Mat2i& m) const {
    return static_cast<std::uint64_t>(m[0]) << 48 | static_cast<std::uint64_t>(m[1]) << 32 |
           static_cast<std::uint64_t>(m[2]) << 16 | static_cast<std::uint64_t>(m[3]);
}

GroupContext::Mat2i GroupContext::unpacki(std::uint64_t key) const {
    return Mat2i{static_cast<i64>(key >> 48) & 0xffff, static_cast<i64>(key >> 32) & 0xffff,
                 static_cast<i64>(key >> 16) & 0xffff, static_cast<i64>(key) & 0xffff};
}

GroupContext::Mat2i GroupContext::mat_muli(const Mat2i& x, const Mat2i& y) const {
    return Mat2i{fadd(fmul(x[0], y[0]), fmul(x[1], y[2])), fadd(fmul(x[0], y[1]), fmul(x[1], y[3])),
                 fadd(fmul(x[2], y[0]), fmul(x[3], y[2])), fadd(fmul(x[2], y[1]), fmul(x[3], y[3]))};
}

Mat2 GroupContext::mat(i64 a, i64 b, i64 c, i64 d) const {
    return Mat2{fq_.from_index(a), fq_.from_index(b), fq_.from_index(c), fq_.from_index(d)};
}

namespace {

// Index convention: operators take the canonical digit representative.
i64 s_index(const GroupContext& g, i64 a) {
    i64 m = g.q() - 1;
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

GroupAlgElem s_op(const GroupContext& g, i64 a, Mutation mut) {
    const i64 q = g.q();
    i64 i = s_index(g, a);
    if (mut == Mutation::s_sign) i = s_index(g, -i);
    GroupAlgElem r;
    r.terms.reserve(q - 1);
    i64 one = g.Fq().to_index(g.Fq().one());
    for (i64 lam = 1; lam < q; ++lam) {
        // coefficient [lambda]^i = [lambda^i]
        i64 pw = (i == 0) ? one : g.exp_of(g.dlog(lam) * i);
        r.terms.emplace(g.packi({lam, one, one, 0}), g.teich(pw));
    }
    return r;
}

GroupAlgElem s_plus_op(const GroupContext& g, i64 a, Mutation mut) {
    const i64 q = g.q();
    i64 i = s_index(g, a);
    if (mut == Mutation::s_sign) i = s_index(g, -i);
    GroupAlgElem r;
    r.terms.reserve(q - 1);
    i64 one = g.Fq().to_index(g.Fq().one());
    for (i64 lam = 1; lam < q; ++lam) {
        i64 pw = (i == 0) ? one : g.exp_of(g.dlog(lam) * i);
        r.terms.emplace(g.packi({one, 0, lam, one}), g.teich(pw));
    }
    return r;
}

GroupAlgElem identity_elem(const GroupContext& g) {
    GroupAlgElem r;
    i64 one = g.Fq().to_index(g.Fq().one());
    r.terms.emplace(g.packi({one, 0, 0, one}), g.W().one());
    return r;
}

GroupAlgElem convolve(const GroupContext& g, const GroupAlgElem& x, const GroupAlgElem& y,
                      Exec exec) {
    std::vector<std::pair<std::uint64_t, WittElem>> xs(x.terms.begin(), x.terms.end());
    std::vector<std::pair<std::uint64_t, WittElem>> ys(y.terms.begin(), y.terms.end());
    const WittRing& W = g.W();

    auto combine = [&](GroupAlgElem& acc, std::uint64_t key, const WittElem& v) {
        auto it = acc.terms.find(key);
        if (it == acc.terms.end())
            acc.terms.emplace(key, v);
        else
            it->second = W.add(it->second, v);
    };

    GroupAlgElem out;
#ifdef _OPENMP
    if (exec == Exec::parallel) {
        int nt = omp_get_max_threads();
        std::vector<GroupAlgElem> partial(nt);
#pragma omp parallel for schedule(static)
        for (size_t i = 0; i < xs.size(); ++i) {
            GroupAlgElem& mine = partial[omp_get_thread_num()];
            GroupContext::Mat2i mx = g.unpacki(xs[i].first);
            for (const auto& [ky, vy] : ys) {
                GroupContext::Mat2i m = g.mat_muli(mx, g.unpacki(ky));
                combine(mine, g.packi(m), W.mul(xs[i].second, vy));
            }
        }
        for (const GroupAlgElem& part : partial)
            for (const auto& [k, v] : part.terms) combine(out, k, v);
    } else
#endif
    {
        (void)exec;
        for (const auto& [kx, vx] : xs) {
            GroupContext::Mat2i mx = g.unpacki(kx);
            for (const auto& [ky, vy] : ys) {
                GroupContext::Mat2i m = g.mat_muli(mx, g.unpacki(ky));
                combine(out, g.packi(m), W.mul(vx, vy));
            }
        }
    }
    // prune zeros
    for (auto it = out.terms.begin(); it != out.terms.end();) {
        if (W.is_zero(it->second))
            it = out.terms.erase(it);
        else
            ++it;
    }
    return out;
}

ScalarExtract extract_scalar(const GroupContext& g, const GroupAlgElem& x, const GroupAlgElem& ref) {
    const WittRing& W = g.W();
    ScalarExtract r;
    if (ref.terms.empty()) {
        r.err = "reference is zero";
        return r;
    }
    // pick the reference coefficient of least valuation
    const WittElem* rbest = nullptr;
    const std::uint64_t* kbest = nullptr;
    int vbest = W.precision() + 1;
    for (const auto& [k, v] : ref.terms) {
        int val = W.valuation(v).v;
        if (val < vbest) {
            vbest = val;
            rbest = &v;
            kbest = &k;
        }
    }
    if (vbest >= W.precision()) {
        r.err = "reference vanishes at working precision; raise N";
        return r;
    }
    auto xit = x.terms.find(*kbest);
    if (xit == x.terms.end()) {
        r.err = "support mismatch: x vanishes on the reference support";
        return r;
    }
    const WittElem& x0 = xit->second;
    Valuation xv = W.valuation(x0);
    if (xv.exhausted) {
        r.err = "x vanishes at working precision on the pivot";
        return r;
    }

    // proportionality by cross-ratios, exact at precision N
    for (const auto& [k, v] : ref.terms) {
        auto it = x.terms.find(k);
        WittElem xs = (it == x.terms.end()) ? W.zero() : it->second;
        if (!(W.mul(xs, *rbest) == W.mul(x0, v))) {
            r.err = "not a scalar multiple (cross-ratio failure)";
            return r;
        }
    }
    for (const auto& [k, v] : x.terms) {
        if (!ref.terms.count(k)) {
            r.err = "support mismatch: x has extra support";
            return r;
        }
    }
    r.ok = true;
    r.valuation = xv.v - vbest;
    r.leading = g.Fq().mul(W.leading_term(x0), g.Fq().inv(W.leading_term(*rbest)));
    return r;
}

PrincipalSeries::PrincipalSeries(const GroupContext& g, weights::Character chi, Mutation mut)
    : g_(&g), chi_(chi), mut_(mut) {}

PrincipalSeries::Vec PrincipalSeries::zero_vec() const {
    return Vec{std::vector<WittElem>(dim(), g_->W().zero()), 0};
}

PrincipalSeries::Vec PrincipalSeries::phi_chi() const {
    Vec v = zero_vec();
    v.v[0] = g_->W().one();
    return v;
}

GroupContext::Mat2i PrincipalSeries::repi(int index) const {
    i64 one = g_->Fq().to_index(g_->Fq().one());
    if (index == 0) return {one, 0, 0, one};
    return {0, one, one, index - 1};  // (0 1; 1 mu), mu = from_index(index-1)
}

std::pair<int, const WittElem*> PrincipalSeries::decompose(const GroupContext::Mat2i& m) const {
    i64 x, z;
    int index;
    if (m[2] == 0) {
        index = 0;
        x = m[0];
        z = m[3];
    } else {
        i64 mu = g_->fmul(m[3], g_->inv_index(m[2]));
        index = 1 + static_cast<int>(mu);
        x = g_->fsub(m[1], g_->fmul(m[0], mu));
        z = m[2];
    }
    i64 a1 = chi_.a1, a2 = chi_.a2;
    if (mut_ == Mutation::coset) std::swap(a1, a2);
    i64 k = g_->dlog(x) * a1 + g_->dlog(z) * a2;
    return {index, &g_->teich(g_->exp_of(k))};
}

PrincipalSeries::Vec PrincipalSeries::apply(const GroupAlgElem& op, const Vec& in, Exec exec) const {
    const WittRing& W = g_->W();
    std::vector<std::pair<GroupContext::Mat2i, WittElem>> terms;
    terms.reserve(op.terms.size());
    for (const auto& [k, v] : op.terms) terms.emplace_back(g_->unpacki(k), v);

    Vec out = zero_vec();
    out.denom = in.denom;
    const int n = dim();

    auto row = [&](int cp) {
        WittElem acc = W.zero();
        GroupContext::Mat2i r = repi(cp);
        for (const auto& [gmat, coeff] : terms) {
            GroupContext::Mat2i m = g_->mat_muli(r, gmat);
            auto [c, bc] = decompose(m);
            acc = W.add(acc, W.mul(coeff, W.mul(*bc, in.v[c])));
        }
        out.v[cp] = acc;
    };

#ifdef _OPENMP
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (int cp = 0; cp < n; ++cp) row(cp);
        return out;
    }
#endif
    (void)exec;
    for (int cp = 0; cp < n; ++cp) row(cp);
    return out;
}

PrincipalSeries::Vec PrincipalSeries::apply_single(const Mat2& m, const Vec& in) const {
    const WittRing& W = g_->W();
    const FqField& F = g_->Fq();
    GroupContext::Mat2i mi{F.to_index(m.a), F.to_index(m.b), F.to_index(m.c), F.to_index(m.d)};
    Vec out = zero_vec();
    out.denom = in.denom;
    for (int cp = 0; cp < dim(); ++cp) {
        GroupContext::Mat2i prod = g_->mat_muli(repi(cp), mi);
        auto [c, bc] = decompose(prod);
        out.v[cp] = W.mul(*bc, in.v[c]);
    }
    return out;
}

PrincipalSeries::Vec PrincipalSeries::scale(const WittElem& c, const Vec& in) const {
    Vec out = in;
    for (auto& x : out.v) x = g_->W().mul(c, x);
    return out;
}

bool PrincipalSeries::has_h_character(const Vec& v, weights::Character expect) const {
    const FqField& F = g_->Fq();
    i64 one = F.to_index(F.one());
    i64 gidx = F.to_index(F.generator());
    Vec left = apply_single(g_->mat(gidx, 0, 0, one), v);
    Vec right = apply_single(g_->mat(one, 0, 0, gidx), v);
    Vec el = scale(g_->teich(g_->exp_of(g_->dlog(gidx) * expect.a1)), v);
    Vec er = scale(g_->teich(g_->exp_of(g_->dlog(gidx) * expect.a2)), v);
    return left.v == el.v && right.v == er.v;
}

ScalarExtract PrincipalSeries::extract_scalar(const Vec& x, const Vec& ref) const {
    const WittRing& W = g_->W();
    ScalarExtract r;
    int pivot = -1, vbest = W.precision() + 1;
    for (int i = 0; i < dim(); ++i) {
        int val = W.valuation(ref.v[i]).v;
        if (val < vbest) {
            vbest = val;
            pivot = i;
        }
    }
    if (pivot < 0 || vbest >= W.precision()) {
        r.err = "reference vanishes at working precision; raise N";
        return r;
    }
    Valuation xv = W.valuation(x.v[pivot]);
    if (xv.exhausted) {
        bool xzero = true;
        for (const WittElem& c : x.v) xzero &= W.is_zero(c);
        r.err = xzero ? "x is zero at working precision" : "support mismatch at the pivot";
        return r;
    }
    for (int i = 0; i < dim(); ++i) {
        if (!(W.mul(x.v[i], ref.v[pivot]) == W.mul(x.v[pivot], ref.v[i]))) {
            r.err = "not a scalar multiple (cross-ratio failure at basis " + std::to_string(i) + ")";
            return r;
        }
    }
    r.ok = true;
    r.valuation = (xv.v - x.denom) - (vbest - ref.denom);
    r.leading = g_->Fq().mul(W.leading_term(x.v[pivot]), g_->Fq().inv(W.leading_term(ref.v[pivot])));
    return r;
}

namespace {

i64 modq1(i64 a, i64 q) {
    i64 m = q - 1;
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

OpCheck check_product_pair(const ParamSet& ps, i64 a, i64 b, int N, Exec exec) {
    GroupContext g(ps.p, ps.f, N);
    const i64 q = g.q();
    if (a <= 0 || a >= q - 1 || b <= 0 || b >= q - 1 || a + b == q - 1)
        return OpCheck{false, "precondition violated: need 0<a,b<q-1, a+b != q-1", 0, {}};

    weights::UJ uj = weights::u_and_j(a, b, ps.p, ps.f);
    FqElem expect = g.Fq().from_scalar(uj.jval);

    GroupAlgElem sp_a = s_plus_op(g, a), sp_b = s_plus_op(g, b);
    GroupAlgElem lhs1 = convolve(g, sp_a, sp_b, exec);
    ScalarExtract e1 = extract_scalar(g, lhs1, s_plus_op(g, a + b));

    GroupAlgElem lhs2 = convolve(g, s_op(g, a), sp_b, exec);
    ScalarExtract e2 = extract_scalar(g, lhs2, s_op(g, a + b));

    OpCheck r;
    if (!e1.ok || !e2.ok) {
        r.detail = "extraction failed: " + (e1.ok ? e2.err : e1.err);
        return r;
    }
    bool ok1 = e1.valuation == uj.u && e1.leading == expect;
    bool ok2 = e2.valuation == uj.u && e2.leading == expect;
    r.ok = ok1 && ok2;
    r.valuation = e1.valuation;
    r.leading = e1.leading;
    if (!r.ok)
        r.detail = "scalar mismatch: got (v=" + std::to_string(e1.valuation) + "," +
                   std::to_string(e2.valuation) + ") expected v=" + std::to_string(uj.u);
    return r;
}

OpCheck check_product_multi(const ParamSet& ps, const std::vector<i64>& as, int N, Exec exec) {
    GroupContext g(ps.p, ps.f, N);
    const i64 q = g.q();
    i64 sum = 0;
    for (size_t i = 0; i < as.size(); ++i) {
        if (as[i] <= 0 || as[i] >= q - 1)
            return OpCheck{false, "precondition violated: index out of (0, q-1)", 0, {}};
        sum += as[i];
        if (i + 1 < as.size() && modq1(sum, q) == 0)
            return OpCheck{false, "precondition violated: partial sum divisible by q-1", 0, {}};
    }

    GroupAlgElem prod = s_plus_op(g, as[0]);
    for (size_t i = 1; i < as.size(); ++i) prod = convolve(g, prod, s_plus_op(g, as[i]), exec);

    weights::UJ uj = weights::u_and_j_multi(as, ps.p, ps.f);
    FqElem expect = g.Fq().from_scalar(uj.jval);
    OpCheck r;

    if (modq1(sum, q) != 0) {
        ScalarExtract e = extract_scalar(g, prod, s_plus_op(g, sum));
        if (!e.ok) {
            r.detail = "extraction failed: " + e.err;
            return r;
        }
        r.ok = e.valuation == uj.u && e.leading == expect;
        r.valuation = e.valuation;
        r.leading = e.leading;
        if (!r.ok) r.detail = "scalar mismatch in the nondivisible case";
        return r;
    }

    // divisible case: prod = J' S+_0 + Jt * identity
    const WittRing& W = g.W();
    GroupAlgElem id = identity_elem(g);
    std::uint64_t idkey = id.terms.begin()->first;
    auto it = prod.terms.find(idkey);
    if (it == prod.terms.end()) {
        r.detail = "identity component missing";
        return r;
    }
    WittElem jt = it->second;
    // remaining support must be the S+_0 support with a constant coefficient
    GroupAlgElem rest = prod;
    rest.terms.erase(idkey);
    ScalarExtract e = extract_scalar(g, rest, s_plus_op(g, 0));
    if (!e.ok && e.err != "x is zero at working precision") {
        r.detail = "S+_0 component not scalar: " + e.err;
        return r;
    }
    Valuation v = W.valuation(jt);
    if (v.exhausted) {
        r.detail = "identity coefficient vanishes at working precision";
        return r;
    }
    r.ok = v.v == uj.u && W.leading_term(jt) == expect;
    r.valuation = v.v;
    r.leading = W.leading_term(jt);
    if (!r.ok) r.detail = "identity-component scalar mismatch";
    return r;
}

OpCheck check_ssv(const ParamSet& ps, const SubsetJ& J, i64 a, i64 b, int N, Mutation mut,
                  Exec exec) {
    GroupContext g(ps.p, ps.f, N);
    const i64 q = g.q();
    weights::WeightVectors w = weights::weight_vectors(J, ps);
    i64 s_int = weights::weighted_int(w.s, ps.p);
    if (modq1(a, q) == 0 || modq1(a - b, q) == 0 || modq1(a - b - s_int, q) == 0)
        return OpCheck{false, "precondition violated: q-1 divides a, a-b or a-b-s", 0, {}};

    weights::Character chi = weights::chi(J, ps);
    PrincipalSeries PS(g, chi, mut);
    PrincipalSeries::Vec v = PS.phi_chi();

    // H-eigencharacter bookkeeping before scalar extraction
    PrincipalSeries::Vec sbv = PS.apply(s_op(g, b, mut), v, exec);
    weights::Character after_sb{modq1(chi.a2 - b, q), modq1(chi.a1 + b, q)};
    if (mut == Mutation::none && !PS.has_h_character(sbv, after_sb))
        return OpCheck{false, "H-eigencharacter mismatch after S_b", 0, {}};

    PrincipalSeries::Vec lhs = PS.apply(s_op(g, a, mut), sbv, exec);
    PrincipalSeries::Vec rhs = PS.apply(s_op(g, a - b - s_int, mut), v, exec);

    ScalarExtract e = PS.extract_scalar(lhs, rhs);
    OpCheck r;
    if (!e.ok) {
        r.detail = "extraction failed: " + e.err;
        return r;
    }
    weights::UJ uj = weights::u_and_j(a, -b - s_int, ps.p, ps.f);
    i64 sign = fp::sign_pow(weights::digit_sum(w.t), ps.p);
    FqElem expect = g.Fq().from_scalar(fp::mul(sign, uj.jval, ps.p));
    // The digit-count valuation applies off the degenerate index class
    // b + s = 0 mod q-1, where the scalar is a unit.
    i64 expect_val = (modq1(b + s_int, q) == 0) ? 0 : uj.u;
    r.ok = e.valuation == expect_val && e.leading == expect;
    r.valuation = e.valuation;
    r.leading = e.leading;
    if (!r.ok)
        r.detail = "scalar mismatch: got v=" + std::to_string(e.valuation) +
                   " expected v=" + std::to_string(uj.u);
    return r;
}

OpCheck check_pr(const ParamSet& ps, const SubsetJ& J, int N, Exec exec) {
    if (ps.j_rho.full()) return OpCheck{false, "needs J_rho proper", 0, {}};
    if (J == find_j_star(ps.j_rho)) return OpCheck{false, "J = J* is out of scope", 0, {}};
    if (J.empty()) return OpCheck{false, "needs J nonempty", 0, {}};

    GroupContext g(ps.p, ps.f, N);
    const i64 q = g.q();
    weights::IExponents ie = weights::i_exponents(J, ps);
    if (modq1(ie.i_chi_s, q) == 0) return OpCheck{false, "i(chi^s) divisible by q-1", 0, {}};

    weights::Character chi = weights::chi(J, ps);
    PrincipalSeries PS(g, chi);
    PrincipalSeries::Vec phi = PS.phi_chi();
    PrincipalSeries::Vec lhs = PS.apply(s_op(g, ie.i_chi_s), PS.apply(s_op(g, 0), phi, exec), exec);

    weights::CChiBranch branch = weights::c_chi_branch(J, ps);
    i64 s_int = weights::weighted_int(weights::weight_vectors(J, ps).s, ps.p);

    PrincipalSeries::Vec rhs = PS.zero_vec();
    i64 expect_val = 0;
    switch (branch) {
        case weights::CChiBranch::stable:
            rhs = PS.apply(s_op(g, ie.i_chi), phi, exec);
            expect_val = weights::u_and_j(ie.i_chi_s, -s_int, ps.p, ps.f).u;
            break;
        case weights::CChiBranch::inside_rho:
            rhs = PS.apply(s_plus_op(g, q - 1 - modq1(ie.i_chi_s, q)), phi, exec);
            expect_val = weights::u_and_j(ie.i_chi_s, -s_int, ps.p, ps.f).u;
            break;
        case weights::CChiBranch::general: {
            i64 iplus = weights::i_plus(J, ps);
            rhs = PS.apply(s_plus_op(g, iplus), PS.apply(s_op(g, ie.i_chi), phi, exec), exec);
            expect_val = weights::u_and_j(ie.i_chi_s, -s_int, ps.p, ps.f).u -
                         weights::u_and_j(iplus, -ie.i_chi - s_int, ps.p, ps.f).u;
            break;
        }
    }

    ScalarExtract e = PS.extract_scalar(lhs, rhs);
    OpCheck r;
    if (!e.ok) {
        r.detail = "extraction failed: " + e.err;
        return r;
    }
    FqElem expect_lead = g.Fq().from_scalar(weights::c_chi(J, ps));
    r.ok = e.leading == expect_lead && e.valuation == expect_val;
    r.valuation = e.valuation;
    r.leading = e.leading;
    if (!r.ok)
        r.detail = "leading term or valuation mismatch (got v=" + std::to_string(e.valuation) +
                   ", expected v=" + std::to_string(expect_val) + ")";
    return r;
}

}  // namespace groupalg
}  // namespace diamond

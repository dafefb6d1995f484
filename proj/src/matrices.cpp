#include "diamond/matrices.hpp"

#include <json.hpp>

namespace diamond {
namespace matrices {

namespace {

SubsetJ sub(std::uint32_t bits, int f) { return subset_of(bits, f); }

}  // namespace

ConstMatrix zero_matrix(const ParamSet& ps) {
    ConstMatrix m;
    m.f = ps.f;
    m.e.assign(static_cast<size_t>(m.n()) * m.n(), ps.F.zero());
    return m;
}

bool in_pattern(const SubsetJ& J, const SubsetJ& Jp, const SubsetJ& j_rho) {
    return op_delta_ss(J, j_rho) == op_ss(Jp, j_rho);
}

FqElem nu(const SubsetJ& J, const SubsetJ& Jp, const ParamSet& ps) {
    if (!in_pattern(J, Jp, ps.j_rho)) throw error("nu: (J-1)^ss != (J')^ss");
    FqElem v = ps.F.pow(ps.beta, ps.f - 2 * J.size());
    for (int j : subset_indices(op_nss(shift(J, -1), ps.j_rho))) v = ps.F.mul(v, ps.d[j]);
    for (int j : subset_indices(op_nss(Jp, ps.j_rho))) v = ps.F.mul(v, ps.F.inv(ps.d[j]));
    return v;
}

FqElem nu_of_j(const SubsetJ& J, const ParamSet& ps) {
    if (ps.j_rho.full()) throw error("nu_of_j: needs J_rho proper");
    const FqField& F = ps.F;
    SubsetJ jss = op_ss(J, ps.j_rho);
    // any row with (row-1)^ss = J^ss works; take row = J^ss + 1
    SubsetJ row = shift(jss, 1);
    FqElem v = F.mul(nu(row, J, ps), F.inv(nu(row, jss, ps)));
    for (const SubsetJ& c : delta_ss_chain(J, ps.j_rho))
        v = F.mul(v, nu(c, op_delta_ss(c, ps.j_rho), ps));
    for (const SubsetJ& c : delta_ss_chain(jss, ps.j_rho))
        v = F.mul(v, F.inv(nu(c, op_delta_ss(c, ps.j_rho), ps)));
    return v;
}

ConstMatrix build_extended_nu(const ParamSet& ps) {
    ConstMatrix m = zero_matrix(ps);
    for (const SubsetJ& J : all_subsets(ps.f))
        for (const SubsetJ& Jp : all_subsets(ps.f))
            if (in_pattern(J, Jp, ps.j_rho)) m.at(J.bits, Jp.bits) = nu(J, Jp, ps);
    std::string why;
    if (!conjugation_conditions_hold(m, ps, &why))
        throw error("build_extended_nu: conjugation conditions failed: " + why);
    return m;
}

bool conjugation_conditions_hold(const ConstMatrix& B, const ParamSet& ps, std::string* why) {
    const int f = ps.f;
    for (const SubsetJ& J : all_subsets(f)) {
        for (const SubsetJ& Jp : all_subsets(f)) {
            bool nonzero = !ps.F.is_zero(B.at(J.bits, Jp.bits));
            if (nonzero != in_pattern(J, Jp, ps.j_rho)) {
                if (why)
                    *why = "support condition fails at (" + to_string(J) + "," + to_string(Jp) + ")";
                return false;
            }
        }
    }
    // ratio consistency across rows sharing (J-1)^ss and columns sharing J^ss
    for (const SubsetJ& J1 : all_subsets(f)) {
        for (const SubsetJ& J2 : all_subsets(f)) {
            if (!(op_delta_ss(J1, ps.j_rho) == op_delta_ss(J2, ps.j_rho))) continue;
            for (const SubsetJ& J3 : all_subsets(f)) {
                if (!in_pattern(J1, J3, ps.j_rho)) continue;
                for (const SubsetJ& J4 : all_subsets(f)) {
                    if (!in_pattern(J1, J4, ps.j_rho)) continue;
                    FqElem lhs = ps.F.mul(B.at(J1.bits, J3.bits), B.at(J2.bits, J4.bits));
                    FqElem rhs = ps.F.mul(B.at(J2.bits, J3.bits), B.at(J1.bits, J4.bits));
                    if (!(lhs == rhs)) {
                        if (why) *why = "ratio condition fails";
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

ConstMatrix build_banded(const ConstMatrix& extended, const ParamSet& ps) {
    ConstMatrix m = zero_matrix(ps);
    for (const SubsetJ& K : all_subsets(ps.f)) {
        SubsetJ km1 = shift(K, -1);
        SubsetJ lo = op_ss(km1, ps.j_rho);
        for (const SubsetJ& Jp : all_subsets(ps.f)) {
            if (is_subset(lo, Jp) && is_subset(Jp, km1))
                m.at(Jp.bits, K.bits) = extended.at(K.bits, Jp.bits);
        }
    }
    return m;
}

InvariantData extract_invariants(const ConstMatrix& B, const ParamSet& ps) {
    if (ps.j_rho.full()) throw error("extract_invariants: needs J_rho proper");
    const FqField& F = ps.F;
    InvariantData inv;
    inv.at_empty = B.at(0, 0);

    SubsetJ js = find_j_star(ps.j_rho);
    SubsetJ jsm = op_delta_ss(js, ps.j_rho);  // (J*-1)^ss
    inv.at_jstar = F.mul(B.at(jsm.bits, js.bits), B.at(js.bits, jsm.bits));

    for (const SubsetJ& J : all_subsets(ps.f)) {
        if (is_subset(J, ps.j_rho) || J == js) continue;
        SubsetJ jss = op_ss(J, ps.j_rho);
        FqElem chain = F.one();
        {
            SubsetJ cur = J;
            for (int i = 0; i < ell(J, ps.j_rho); ++i) {
                SubsetJ nxt = op_delta_ss(cur, ps.j_rho);
                chain = F.mul(chain, B.at(cur.bits, nxt.bits));
                cur = nxt;
            }
            cur = jss;
            for (int i = 0; i < ell(jss, ps.j_rho); ++i) {
                SubsetJ nxt = op_delta_ss(cur, ps.j_rho);
                chain = F.mul(chain, F.inv(B.at(cur.bits, nxt.bits)));
                cur = nxt;
            }
        }
        bool have = false;
        FqElem value = F.zero();
        for (const SubsetJ& row : all_subsets(ps.f)) {
            if (!(op_delta_ss(row, ps.j_rho) == jss)) continue;
            FqElem ratio = F.mul(B.at(row.bits, J.bits), F.inv(B.at(row.bits, jss.bits)));
            FqElem candidate = F.mul(ratio, chain);
            if (!have) {
                value = candidate;
                have = true;
            } else if (!(value == candidate)) {
                throw error("extract_invariants: row-independence violated at J=" + to_string(J));
            }
        }
        if (!have) throw error("extract_invariants: no admissible row for J=" + to_string(J));
        inv.at_j[J.bits] = value;
    }
    return inv;
}

ConstMatrix conjugate_diagonal(const ConstMatrix& B, const std::vector<FqElem>& q,
                               const ParamSet& ps) {
    ConstMatrix m = zero_matrix(ps);
    for (std::uint32_t r = 0; r < static_cast<std::uint32_t>(m.n()); ++r)
        for (std::uint32_t c = 0; c < static_cast<std::uint32_t>(m.n()); ++c)
            m.at(r, c) = ps.F.mul(ps.F.mul(ps.F.inv(q[r]), B.at(r, c)), q[c]);
    return m;
}

Canonical canonicalize(const ConstMatrix& B, const ParamSet& ps) {
    if (ps.j_rho.full()) throw error("canonicalize: needs J_rho proper");
    std::vector<FqElem> q(1 << ps.f, ps.F.one());
    for (const SubsetJ& J : all_subsets(ps.f)) {
        FqElem acc = ps.F.one();
        SubsetJ cur = J;
        for (int i = 0; i < ell(J, ps.j_rho); ++i) {
            SubsetJ nxt = op_delta_ss(cur, ps.j_rho);
            acc = ps.F.mul(acc, B.at(cur.bits, nxt.bits));
            cur = nxt;
        }
        q[J.bits] = acc;
    }
    return Canonical{conjugate_diagonal(B, q, ps), q};
}

ConstMatrix reconstruct_from_invariants(const InvariantData& inv, const ParamSet& ps) {
    const FqField& F = ps.F;
    ConstMatrix m = zero_matrix(ps);
    SubsetJ js = find_j_star(ps.j_rho);
    SubsetJ jsm = op_delta_ss(js, ps.j_rho);

    // delta_ss-columns first: 1 off the empty row, B_{empty,empty} there
    for (const SubsetJ& J : all_subsets(ps.f)) {
        SubsetJ col = op_delta_ss(J, ps.j_rho);
        m.at(J.bits, col.bits) = J.empty() ? inv.at_empty : F.one();
    }
    // then the columns J' outside J_rho
    for (const SubsetJ& J : all_subsets(ps.f)) {
        for (const SubsetJ& Jp : all_subsets(ps.f)) {
            if (!in_pattern(J, Jp, ps.j_rho) || is_subset(Jp, ps.j_rho)) continue;
            if (Jp == js) {
                SubsetJ colm = op_delta_ss(J, ps.j_rho);  // (J-1)^ss = (J*)^ss
                FqElem denom = m.at(jsm.bits, colm.bits);
                if (F.is_zero(denom))
                    throw error("reconstruct_from_invariants: missing pivot entry");
                m.at(J.bits, Jp.bits) =
                    F.mul(inv.at_jstar, F.mul(m.at(J.bits, colm.bits), F.inv(denom)));
            } else {
                SubsetJ colss = op_ss(Jp, ps.j_rho);
                m.at(J.bits, Jp.bits) =
                    F.mul(inv.at_j.at(Jp.bits), m.at(J.bits, colss.bits));
            }
        }
    }
    return m;
}

FqElem gamma_invariant_empty(const ParamSet& ps) { return ps.xi; }

FqElem gamma_invariant_jstar(const ParamSet& ps) {
    if (ps.j_rho.empty() || ps.j_rho.full())
        throw error("gamma_invariant_jstar: needs J_rho neither empty nor full");
    SubsetJ js = find_j_star(ps.j_rho);
    SubsetJ jsm = op_delta_ss(js, ps.j_rho);

    auto gamma_sign = [&](const SubsetJ& Jp) -> i64 {
        i64 exp = ps.f - 1;
        if (op_nss(Jp, ps.j_rho).full()) exp += 1;
        exp += set_intersect(Jp, op_nss(shift(Jp, -1), ps.j_rho)).size();
        return exp;
    };
    i64 sign_exp = gamma_sign(js) + gamma_sign(jsm);
    i64 v = fp::mul(fp::sign_pow(sign_exp, ps.p),
                    fp::mul(weights::mu_js_j(js, ps), weights::mu_js_j_reflected(js, ps), ps.p),
                    ps.p);
    return ps.F.from_scalar(v);
}

FqElem gamma_invariant_at(const SubsetJ& J, const ParamSet& ps) {
    return leadterm::gamma_of_j(J, ps);
}

TheoremReport verify_main_theorem(const ParamSet& ps, const TheoremOptions& opt) {
    TheoremReport rep;
    auto fail = [&](const std::string& s) {
        rep.ok = false;
        rep.failures.push_back(s);
    };
    if (ps.j_rho.empty() || ps.j_rho.full()) {
        fail("theorem verification handles only J_rho neither empty nor full");
        return rep;
    }

    ParamSet nu_side = ps;
    if (opt.mutate_d_index >= 0) {
        int j = opt.mutate_d_index;
        if (ps.j_rho.contains(j)) {
            fail("cannot mutate d_j inside J_rho");
            return rep;
        }
        FqElem g = ps.F.generator();
        nu_side.d[j] = ps.F.mul(ps.d[j], g);
        if (nu_side.d[j] == ps.d[j]) {
            fail("mutation had no effect");
            return rep;
        }
    }

    ConstMatrix nu_ext = build_extended_nu(nu_side);
    InvariantData got = extract_invariants(nu_ext, nu_side);

    InvariantData want;
    want.at_empty = gamma_invariant_empty(ps);
    want.at_jstar = gamma_invariant_jstar(ps);
    if (!(want.at_jstar == ps.F.one()))
        fail("gamma J*-pair is not 1: " + ps.F.to_string(want.at_jstar));
    for (const SubsetJ& J : all_subsets(ps.f)) {
        if (is_subset(J, ps.j_rho) || J == find_j_star(ps.j_rho)) continue;
        want.at_j[J.bits] = gamma_invariant_at(J, ps);
    }

    auto cmp = [&](const std::string& name, const FqElem& a, const FqElem& b) {
        std::string line = name + ": nu " + ps.F.to_string(a) + "  gamma " + ps.F.to_string(b);
        rep.table.push_back(line);
        if (!(a == b)) fail("invariant mismatch at " + line);
    };
    cmp("empty", got.at_empty, want.at_empty);
    cmp("J*", got.at_jstar, want.at_jstar);
    for (const auto& [bits, v] : want.at_j)
        cmp("J=" + to_string(sub(bits, ps.f)), got.at_j.at(bits), v);

    // beta^B d(J) double route
    for (const auto& [bits, v] : want.at_j) {
        SubsetJ J = sub(bits, ps.f);
        Exponents ex = exponents(J, ps.j_rho);
        FqElem direct = ps.F.pow(ps.beta, ex.b);
        std::vector<i64> de = d_exponent_vector(J, ps.j_rho);
        for (int j = 0; j < ps.f; ++j)
            if (de[j] != 0) direct = ps.F.mul(direct, ps.F.pow(ps.d[j], de[j]));
        if (!(gamma_invariant_at(J, ps) == direct))
            fail("gamma(J) != beta^B d(J) at J=" + to_string(J));
    }

    if (rep.ok || opt.mutate_d_index >= 0) {
        ConstMatrix canon_nu = canonicalize(nu_ext, nu_side).mat;
        ConstMatrix recon = reconstruct_from_invariants(want, ps);
        if (!(canon_nu == recon)) fail("canonical forms differ entrywise");
        ConstMatrix banded_nu = build_banded(canon_nu, ps);
        ConstMatrix banded_recon = build_banded(recon, ps);
        if (!(banded_nu == banded_recon)) fail("banded restrictions differ");
    }
    return rep;
}

std::string matrix_json(const ConstMatrix& B, const ParamSet& ps) {
    nlohmann::json out;
    for (const SubsetJ& J : all_subsets(ps.f)) {
        for (const SubsetJ& Jp : all_subsets(ps.f)) {
            const FqElem& v = B.at(J.bits, Jp.bits);
            if (ps.F.is_zero(v)) continue;
            out[to_string(J) + "," + to_string(Jp)] = v.c;
        }
    }
    return out.dump(2);
}

}  // namespace matrices
}  // namespace diamond

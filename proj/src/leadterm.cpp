#include "diamond/leadterm.hpp"

#include <json.hpp>

namespace diamond {
namespace leadterm {

namespace {

void add_exp(std::map<int, i64>& m, int j, i64 e) {
    if (e == 0) return;
    auto it = m.find(j);
    if (it == m.end()) {
        m[j] = e;
    } else {
        it->second += e;
        if (it->second == 0) m.erase(it);
    }
}

std::map<int, i64> merge(const std::map<int, i64>& a, const std::map<int, i64>& b, i64 s) {
    std::map<int, i64> r = a;
    for (auto& [j, e] : b) add_exp(r, j, s * e);
    return r;
}

std::map<int, i64> scale(const std::map<int, i64>& a, i64 s) {
    std::map<int, i64> r;
    for (auto& [j, e] : a)
        if (s * e != 0) r[j] = s * e;
    return r;
}

}  // namespace

Monomial Monomial::times(const Monomial& o) const {
    Monomial r;
    r.sign = sign * o.sign;
    r.p_exp = p_exp + o.p_exp;
    r.beta_exp = beta_exp + o.beta_exp;
    r.d_exp = merge(d_exp, o.d_exp, 1);
    r.x_exp = merge(x_exp, o.x_exp, 1);
    r.y_exp = merge(y_exp, o.y_exp, 1);
    return r;
}

Monomial Monomial::inverse() const {
    Monomial r;
    r.sign = sign;
    r.p_exp = -p_exp;
    r.beta_exp = -beta_exp;
    r.d_exp = scale(d_exp, -1);
    r.x_exp = scale(x_exp, -1);
    r.y_exp = scale(y_exp, -1);
    return r;
}

Monomial Monomial::reduced() const {
    Monomial r = *this;
    std::vector<int> js;
    for (auto& [j, e] : r.x_exp) js.push_back(j);
    for (auto& [j, e] : r.y_exp)
        if (!r.x_exp.count(j)) js.push_back(j);
    for (int j : js) {
        i64 xe = r.x_exp.count(j) ? r.x_exp[j] : 0;
        i64 ye = r.y_exp.count(j) ? r.y_exp[j] : 0;
        i64 m = std::min(xe, ye);
        if (m == 0) continue;
        r.p_exp += m;
        r.x_exp.erase(j);
        r.y_exp.erase(j);
        if (xe - m != 0) r.x_exp[j] = xe - m;
        if (ye - m != 0) r.y_exp[j] = ye - m;
    }
    return r;
}

bool Monomial::xy_free() const { return x_exp.empty() && y_exp.empty(); }

std::string to_string(const Monomial& m) {
    std::string s = m.sign < 0 ? "-" : "+";
    s += "p^" + std::to_string(m.p_exp) + " beta^" + std::to_string(m.beta_exp);
    for (auto& [j, e] : m.d_exp) s += " d" + std::to_string(j) + "^" + std::to_string(e);
    for (auto& [j, e] : m.x_exp) s += " X" + std::to_string(j) + "^" + std::to_string(e);
    for (auto& [j, e] : m.y_exp) s += " Y" + std::to_string(j) + "^" + std::to_string(e);
    return s;
}

Monomial up_chi_factor(const SubsetJ& J, int j, const ParamSet& ps) {
    return up_chi_factor_mutated(J, j, ps, 0);
}

Monomial up_chi_factor_mutated(const SubsetJ& J, int j, const ParamSet& ps, int flip_case) {
    bool a = J.contains(j), b = J.contains(j + 1), rho = ps.j_rho.contains(j);
    Monomial m;
    int fired = 0;
    if (a == b) {
        fired = 1;  // unit factor
    } else if (a && !b && rho) {
        fired = 2;
        m.y_exp[ps.j_rho.mod(j)] = 1;
    } else if (!a && b && rho) {
        fired = 3;
        m.sign = -1;
        m.x_exp[ps.j_rho.mod(j)] = 1;
    } else if (a && !b && !rho) {
        fired = 4;  // -[beta^-2 d_j]^{-1}
        m.sign = -1;
        m.beta_exp = 2;
        m.d_exp[ps.j_rho.mod(j)] = -1;
    } else {
        fired = 5;  // [beta^-2 d_j]
        m.beta_exp = -2;
        m.d_exp[ps.j_rho.mod(j)] = 1;
    }
    if (flip_case != 0 && fired == flip_case) m.sign = -m.sign;
    return m;
}

Monomial up_chi_class(const SubsetJ& J, const ParamSet& ps) {
    Monomial m;
    m.beta_exp = J.f - 2 * J.size();  // |J^c| - |J|
    for (int j = 0; j < J.f; ++j) m = m.times(up_chi_factor(J, j, ps));
    return m;
}

Monomial tilde_up(const SubsetJ& J, const ParamSet& ps, int mutate_case) {
    Monomial m;
    for (const SubsetJ& c : delta_ss_chain(J, ps.j_rho)) {
        Monomial cls;
        cls.beta_exp = c.f - 2 * c.size();
        for (int j = 0; j < c.f; ++j)
            cls = cls.times(up_chi_factor_mutated(c, j, ps, mutate_case));
        m = m.times(cls);
    }
    for (const SubsetJ& c : delta_ss_chain(op_ss(J, ps.j_rho), ps.j_rho)) {
        Monomial cls;
        cls.beta_exp = c.f - 2 * c.size();
        for (int j = 0; j < c.f; ++j)
            cls = cls.times(up_chi_factor_mutated(c, j, ps, mutate_case));
        m = m.times(cls.inverse());
    }
    m = m.reduced();
    if (!m.xy_free()) throw error("tilde_up: X/Y cancellation failure: " + to_string(m));
    return m;
}

UpClosedReport verify_up_closed(const SubsetJ& J, const ParamSet& ps, int mutate_case) {
    UpClosedReport rep;
    rep.got = tilde_up(J, ps, mutate_case);
    Exponents ex = exponents(J, ps.j_rho);
    rep.expect_sign = (ex.a % 2 == 0) ? 1 : -1;
    rep.expect_beta = ex.b;
    rep.expect_d = d_exponent_vector(J, ps.j_rho);

    std::vector<i64> got_d(J.f, 0);
    for (auto& [j, e] : rep.got.d_exp) got_d[j] = e;

    rep.ok = rep.got.sign == rep.expect_sign && rep.got.beta_exp == rep.expect_beta &&
             got_d == rep.expect_d;
    if (!rep.ok) {
        rep.detail = "got " + to_string(rep.got) + " expected sign " +
                     std::to_string(rep.expect_sign) + " beta^" + std::to_string(rep.expect_beta);
    } else {
        rep.detail = "p^" + std::to_string(rep.got.p_exp);
    }
    return rep;
}

FqElem evaluate_class(const Monomial& m, const ParamSet& ps) {
    if (!m.xy_free()) throw error("evaluate_class: unreduced X/Y content");
    FqElem v = ps.F.from_scalar(m.sign);
    v = ps.F.mul(v, ps.F.pow(ps.beta, m.beta_exp));
    for (auto& [j, e] : m.d_exp) v = ps.F.mul(v, ps.F.pow(ps.d[j], e));
    return v;
}

FqElem gamma_of_j(const SubsetJ& J, const ParamSet& ps) {
    FqElem up = evaluate_class(tilde_up(J, ps), ps);
    return ps.F.mul(up, ps.F.from_scalar(weights::c_prime(J, ps)));
}

// ---- Kisin matrices ----------------------------------------------------

SStarData s_star_w_wprime(const SubsetJ& J, const ParamSet& ps) {
    SStarData sd;
    sd.s_star.resize(ps.f);
    sd.w.resize(ps.f);
    sd.w_prime.resize(ps.f);
    for (int j = 0; j < ps.f; ++j) {
        // s*_{j-1} = id iff j not in J, i.e. s*_j = id iff j+1 not in J
        sd.s_star[j] = J.contains(j + 1) ? W2::w : W2::id;
        bool a = J.contains(j), b = J.contains(j + 1);
        sd.w[j] = (a == b) ? W2::id : W2::w;
        bool wp_id = (!a && !b) || (a && b && !ps.j_rho.contains(j));
        sd.w_prime[j] = wp_id ? W2::id : W2::w;
    }
    return sd;
}

namespace {

RTerm t_unit(i64 c = 1) {
    RTerm t;
    t.coeff = c;
    return t;
}

RTerm t_v(i64 c = 1) {
    RTerm t;
    t.coeff = c;
    t.v_exp = 1;
    return t;
}

RTerm t_p() {
    RTerm t;
    t.p_exp = 1;
    return t;
}

RTerm t_sym(std::map<int, i64> RTerm::* field, int j, i64 e, i64 c = 1, int v = 0) {
    RTerm t;
    t.coeff = c;
    (t.*field)[j] = e;
    t.v_exp = v;
    return t;
}

RTerm t_beta_d(int j, i64 beta_e, i64 d_e, i64 c = 1) {
    RTerm t;
    t.coeff = c;
    t.beta_exp = beta_e;
    if (d_e != 0) t.d[j] = d_e;
    return t;
}

RTerm t_mul(const RTerm& a, const RTerm& b) {
    RTerm r;
    r.coeff = a.coeff * b.coeff;
    r.p_exp = a.p_exp + b.p_exp;
    r.beta_exp = a.beta_exp + b.beta_exp;
    r.v_exp = a.v_exp + b.v_exp;
    r.d = merge(a.d, b.d, 1);
    r.x = merge(a.x, b.x, 1);
    r.y = merge(a.y, b.y, 1);
    r.z = merge(a.z, b.z, 1);
    r.zp = merge(a.zp, b.zp, 1);
    r.w = merge(a.w, b.w, 1);
    return r;
}

REntry e_mul(const REntry& a, const REntry& b) {
    REntry r;
    for (const RTerm& s : a)
        for (const RTerm& t : b) r.push_back(t_mul(s, t));
    return r;
}

}  // namespace

KisinMatrices build_kisin_pairs(const std::vector<std::pair<W2, W2>>& pairs, const ParamSet& ps) {
    if (static_cast<int>(pairs.size()) != ps.f) throw error("build_kisin: need one pair per embedding");
    KisinMatrices km;
    km.pair = pairs;
    km.a_prime.resize(ps.f);
    km.a.resize(ps.f);
    km.d_diag.resize(ps.f);
    for (int j = 0; j < ps.f; ++j) {
        auto [wj, wpj] = pairs[j];
        bool rho = ps.j_rho.contains(j);
        if (wj == W2::w && wpj == W2::id)
            throw error("build_kisin: illegal pair (w, id) at j=" + std::to_string(j));
        if (wj == W2::id && wpj == W2::w && !rho)
            throw error("build_kisin: pair (id, w) needs j in J_rho at j=" + std::to_string(j));

        std::array<REntry, 4>& ap = km.a_prime[j];
        if (wj == W2::id && wpj == W2::id) {
            ap[0] = {t_v(), t_p()};
            ap[1] = {};
            ap[2] = {t_sym(&RTerm::x, j, 1, 1, 1), t_beta_d(j, -2, 1, -1)};
            ap[2].back().v_exp = 1;
            ap[3] = {t_unit()};
        } else if (wj == W2::id && wpj == W2::w) {
            ap[0] = {t_unit()};
            ap[1] = {t_sym(&RTerm::y, j, 1, -1)};
            ap[2] = {};
            ap[3] = {t_v(), t_p()};
        } else if (rho) {  // (w, w), j in J_rho
            ap[0] = {t_sym(&RTerm::y, j, 1, -1)};
            ap[1] = {t_unit()};
            ap[2] = {t_v()};
            ap[3] = {t_sym(&RTerm::x, j, 1, 1)};
        } else {  // (w, w), j off J_rho: corner is -p W_j^{-1}
            RTerm corner = t_sym(&RTerm::w, j, -1, -1);
            corner.p_exp = 1;
            ap[0] = {corner};
            ap[1] = {t_unit()};
            ap[2] = {t_v()};
            ap[3] = {t_sym(&RTerm::w, j, 1, 1)};
        }

        RTerm d0a = t_sym(&RTerm::zp, j, 1, 1);
        RTerm d0b;
        d0b.beta_exp = -1;
        RTerm d1a = t_sym(&RTerm::z, j, 1, 1);
        RTerm d1b;
        d1b.beta_exp = 1;
        km.d_diag[j] = {REntry{d0a, d0b}, REntry{d1a, d1b}};

        km.a[j][0] = e_mul(km.d_diag[j][0], ap[0]);
        km.a[j][1] = e_mul(km.d_diag[j][0], ap[1]);
        km.a[j][2] = e_mul(km.d_diag[j][1], ap[2]);
        km.a[j][3] = e_mul(km.d_diag[j][1], ap[3]);
    }
    return km;
}

KisinMatrices build_kisin(const SubsetJ& J, const ParamSet& ps) {
    SStarData sd = s_star_w_wprime(J, ps);
    std::vector<std::pair<W2, W2>> pairs(ps.f);
    for (int j = 0; j < ps.f; ++j) pairs[j] = {sd.w[j], sd.w_prime[j]};
    return build_kisin_pairs(pairs, ps);
}

namespace {

// F-value of a term after killing (p, X, Y, Z, Z'); W_j maps to -beta^-2 d_j.
bool term_mod_m0(const RTerm& t, const ParamSet& ps, FqElem& out, int& v_exp) {
    auto positive = [](const std::map<int, i64>& m) {
        for (auto& [j, e] : m)
            if (e > 0) return true;
        return false;
    };
    auto negative = [](const std::map<int, i64>& m) {
        for (auto& [j, e] : m)
            if (e < 0) return true;
        return false;
    };
    if (negative(t.x) || negative(t.y) || negative(t.z) || negative(t.zp) || t.p_exp < 0)
        throw error("term_mod_m0: negative exponent on an ideal generator");
    if (t.p_exp > 0 || positive(t.x) || positive(t.y) || positive(t.z) || positive(t.zp))
        return false;
    FqElem v = ps.F.from_scalar(t.coeff);
    v = ps.F.mul(v, ps.F.pow(ps.beta, t.beta_exp));
    for (auto& [j, e] : t.d) v = ps.F.mul(v, ps.F.pow(ps.d[j], e));
    for (auto& [j, e] : t.w) {
        FqElem wv = ps.F.neg(ps.F.mul(ps.F.pow(ps.beta, -2), ps.d[j]));
        v = ps.F.mul(v, ps.F.pow(wv, e));
    }
    out = v;
    v_exp = t.v_exp;
    return true;
}

}  // namespace

std::array<VLinear, 4> reduce_mod_m0(const std::array<REntry, 4>& mat, const ParamSet& ps) {
    std::array<VLinear, 4> r;
    for (int i = 0; i < 4; ++i) {
        r[i] = VLinear{ps.F.zero(), ps.F.zero()};
        for (const RTerm& t : mat[i]) {
            FqElem v = ps.F.zero();
            int ve = 0;
            if (!term_mod_m0(t, ps, v, ve)) continue;
            if (ve == 0)
                r[i].c0 = ps.F.add(r[i].c0, v);
            else if (ve == 1)
                r[i].c1 = ps.F.add(r[i].c1, v);
            else
                throw error("reduce_mod_m0: v-degree above 1");
        }
    }
    return r;
}

std::array<VLinear, 4> etale_phi_bar(W2 wj, W2 wpj, int j, const ParamSet& ps) {
    const FqField& F = ps.F;
    FqElem bi = F.inv(ps.beta), b = ps.beta;
    FqElem md = F.neg(F.mul(F.pow(ps.beta, -2), ps.d[j]));  // -beta^-2 d_j
    auto z = F.zero();
    std::array<VLinear, 4> r{VLinear{z, z}, VLinear{z, z}, VLinear{z, z}, VLinear{z, z}};
    if (wj == W2::id && wpj == W2::id) {
        r[0] = VLinear{z, bi};                  // beta^-1 v
        r[2] = VLinear{z, F.mul(b, md)};        // beta * (-beta^-2 d_j) v
        r[3] = VLinear{b, z};
    } else if (wj == W2::id && wpj == W2::w) {
        r[0] = VLinear{bi, z};
        r[3] = VLinear{z, b};
    } else if (wj == W2::w && wpj == W2::w) {
        r[1] = VLinear{bi, z};
        r[2] = VLinear{z, b};
        r[3] = VLinear{F.mul(b, md), z};
    } else {
        throw error("etale_phi_bar: illegal pair");
    }
    return r;
}

UpPrimeCheck verify_up_prime(const SubsetJ& J, const ParamSet& ps, int mutate_case) {
    KisinMatrices km = build_kisin(J, ps);
    SStarData sd = s_star_w_wprime(J, ps);
    i64 beta_total = 0;
    for (int j = 0; j < ps.f; ++j) {
        // s*_{j-1}(1) indexes the diagonal entry: row = col = 0 for id, 1 for w.
        int idx = J.contains(j) ? 1 : 0;  // s*_{j-1} = w iff j in J
        beta_total += (idx == 0) ? 1 : -1;

        const REntry& entry = km.a_prime[j][idx * 2 + idx];
        std::vector<RTerm> mod_v;
        for (const RTerm& t : entry)
            if (t.v_exp == 0) mod_v.push_back(t);
        if (mod_v.size() != 1)
            return UpPrimeCheck{false, "entry mod v not a single term at j=" + std::to_string(j)};
        const RTerm& t = mod_v[0];

        // p * t^{-1} rewritten through X_j Y_j = p and W_j = -[beta^-2 d_j] (1-unit).
        Monomial derived;
        if (t.x.empty() && t.y.empty() && t.w.empty()) {
            if (t.coeff != 1 || t.p_exp > 1)
                return UpPrimeCheck{false, "unexpected unit entry at j=" + std::to_string(j)};
            // 1 or p: inverse times p is a nonnegative power of p
        } else if (t.x.count(j)) {
            if (!ps.j_rho.contains(j))
                return UpPrimeCheck{false, "X entry off J_rho at j=" + std::to_string(j)};
            derived.sign = static_cast<int>(t.coeff);
            derived.y_exp[j] = 1;  // p X^{-1} = Y
        } else if (t.y.count(j)) {
            derived.sign = static_cast<int>(t.coeff);
            derived.x_exp[j] = 1;  // p Y^{-1} = X
        } else if (t.w.count(j) && t.w.at(j) == 1) {
            // p W^{-1}: unit class p * (-[beta^-2 d_j])^{-1}
            derived.sign = -static_cast<int>(t.coeff);
            derived.beta_exp = 2;
            derived.d_exp[j] = -1;
        } else if (t.w.count(j) && t.w.at(j) == -1 && t.p_exp == 1) {
            // p (p W^{-1} c)^{-1} = c^{-1} W: unit class (-1) c^{-1} (-[beta^-2 d_j])
            derived.sign = -static_cast<int>(t.coeff);
            derived.beta_exp = -2;
            derived.d_exp[j] = 1;
        } else {
            return UpPrimeCheck{false, "unrecognized entry shape at j=" + std::to_string(j)};
        }

        Monomial table = up_chi_factor_mutated(J, j, ps, mutate_case);
        if (!(derived == table))
            return UpPrimeCheck{false, "factor mismatch at j=" + std::to_string(j) + ": kisin " +
                                           to_string(derived) + " vs table " + to_string(table)};
    }
    if (beta_total != J.f - 2 * J.size())
        return UpPrimeCheck{false, "beta power mismatch"};
    return UpPrimeCheck{true, ""};
}

namespace {

std::string rterm_str(const RTerm& t) {
    std::string s = std::to_string(t.coeff);
    if (t.p_exp) s += "*p^" + std::to_string(t.p_exp);
    if (t.beta_exp) s += "*beta^" + std::to_string(t.beta_exp);
    auto app = [&](const char* n, const std::map<int, i64>& m) {
        for (auto& [j, e] : m) s += "*" + std::string(n) + std::to_string(j) + "^" + std::to_string(e);
    };
    app("d", t.d);
    app("X", t.x);
    app("Y", t.y);
    app("Z", t.z);
    app("Zp", t.zp);
    app("(X-[beta^-2 d])_", t.w);
    if (t.v_exp) s += "*v^" + std::to_string(t.v_exp);
    return s;
}

nlohmann::json entry_json(const REntry& e) {
    nlohmann::json terms = nlohmann::json::array();
    for (const RTerm& t : e) terms.push_back(rterm_str(t));
    return terms;
}

}  // namespace

std::string lubin_tate_json(const ParamSet& ps) {
    nlohmann::json out = nlohmann::json::array();
    for (int j = 0; j < ps.f; ++j) {
        nlohmann::json m;
        m["j"] = j;
        i64 tk = -(ps.q() - 1) * (ps.r[j] + 1);
        nlohmann::json row0 = nlohmann::json::array(
            {"beta*T_K^" + std::to_string(tk), "beta^-1*d_" + std::to_string(j)});
        nlohmann::json row1 = nlohmann::json::array({"0", "beta^-1"});
        m["mat"] = nlohmann::json::array({row0, row1});
        m["d_j"] = ps.d[j].c;
        out.push_back(m);
    }
    return out.dump(2);
}

std::string fontaine_laffaille_json(const ParamSet& ps) {
    nlohmann::json out = nlohmann::json::array();
    for (int j = 0; j < ps.f; ++j) {
        nlohmann::json m;
        m["j"] = j;
        m["filtration_jump"] = ps.r[j] + 1;
        m["phi_r(e0)"] = "beta^-1*(e0 - d_" + std::to_string((j + 1) % ps.f) + "*e1)";
        m["phi(e1)"] = "beta*e1";
        out.push_back(m);
    }
    return out.dump(2);
}

std::string kisin_json(const SubsetJ& J, const ParamSet& ps) {
    KisinMatrices km = build_kisin(J, ps);
    nlohmann::json out;
    out["J"] = subset_indices(J);
    nlohmann::json mats = nlohmann::json::array();
    for (int j = 0; j < ps.f; ++j) {
        nlohmann::json m;
        m["j"] = j;
        m["pair"] = nlohmann::json::array({km.pair[j].first == W2::id ? "id" : "w",
                                           km.pair[j].second == W2::id ? "id" : "w"});
        nlohmann::json am = nlohmann::json::array();
        for (int i = 0; i < 4; ++i) am.push_back(entry_json(km.a[j][i]));
        m["A"] = am;
        auto red = reduce_mod_m0(km.a[j], ps);
        nlohmann::json rj = nlohmann::json::array();
        for (int i = 0; i < 4; ++i)
            rj.push_back(nlohmann::json::array({ps.F.to_string(red[i].c0), ps.F.to_string(red[i].c1)}));
        m["A_bar"] = rj;
        mats.push_back(m);
    }
    out["matrices"] = mats;
    return out.dump(2);
}

}  // namespace leadterm
}  // namespace diamond

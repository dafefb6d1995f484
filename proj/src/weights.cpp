#include "diamond/weights.hpp"

namespace diamond {
namespace weights {

namespace {

i64 modq1(i64 a, i64 q) {
    i64 m = q - 1;
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 fact(i64 n, i64 p) { return fp::factorial(n, p); }

}  // namespace

WeightVectors weight_vectors(const SubsetJ& J, const ParamSet& ps) {
    const int f = ps.f;
    WeightVectors w;
    w.s.resize(f);
    w.t.resize(f);
    w.s_star.resize(f);
    w.t_star.resize(f);
    for (int j = 0; j < f; ++j) {
        bool a = J.contains(j), b = J.contains(j + 1), rho = ps.j_rho.contains(j);
        i64 r = ps.r[j], p = ps.p;
        i64 s, t;
        if (!a && !b) {
            s = r;
            t = 0;
        } else if (a && !b) {
            s = r + 1;
            t = -1;
        } else if (!a && b) {
            s = p - 2 - r;
            t = r + 1;
        } else if (rho) {
            s = p - 3 - r;
            t = r + 1;
        } else {
            s = p - 1 - r;
            t = r;
        }
        w.s[j] = s;
        w.t[j] = t;
        w.s_star[j] = p - 1 - s;
        w.t_star[j] = r - t;
    }
    return w;
}

i64 weighted_int(const std::vector<i64>& x, i64 p) {
    i64 acc = 0, w = 1;
    for (i64 v : x) {
        acc += v * w;
        w *= p;
    }
    return acc;
}

i64 digit_sum(const std::vector<i64>& x) {
    i64 acc = 0;
    for (i64 v : x) acc += v;
    return acc;
}

Character chi(const SubsetJ& J, const ParamSet& ps) {
    WeightVectors w = weight_vectors(J, ps);
    i64 q = ps.q();
    std::vector<i64> st(ps.f);
    for (int j = 0; j < ps.f; ++j) st[j] = w.s[j] + w.t[j];
    return Character{modq1(weighted_int(st, ps.p), q), modq1(weighted_int(w.t, ps.p), q)};
}

Character chi_s(const SubsetJ& J, const ParamSet& ps) { return conj_s(chi(J, ps)); }

Character conj_s(const Character& ch) { return Character{ch.a2, ch.a1}; }

Digits digits(i64 a, i64 p, int f) {
    i64 q = 1;
    for (int i = 0; i < f; ++i) q *= p;
    Digits d;
    d.a_q = modq1(a, q);
    d.digit.resize(f);
    i64 x = d.a_q;
    for (int j = 0; j < f; ++j) {
        d.digit[j] = x % p;
        x /= p;
    }
    return d;
}

UJ u_and_j(i64 a, i64 b, i64 p, int f) {
    return u_and_j_multi({a, b}, p, f);
}

UJ u_and_j_multi(const std::vector<i64>& as, i64 p, int f) {
    // The empty and singleton lists go through the same formula; the empty
    // list lands on (-f, -1), which is what the chain identities need.
    const i64 n = static_cast<i64>(as.size());
    i64 total = 0;
    std::vector<Digits> ds;
    ds.reserve(as.size());
    for (i64 a : as) {
        ds.push_back(digits(a, p, f));
        total += ds.back().a_q;
    }
    Digits dt = digits(total, p, f);

    i64 num = 0;
    for (int j = 0; j < f; ++j) {
        i64 s = 0;
        for (const Digits& d : ds) s += p - 1 - d.digit[j];
        num += s - (p - 1 - dt.digit[j]);
    }
    if (num % (p - 1) != 0) throw error("u_and_j: carry sum not divisible by p-1");
    i64 u = num / (p - 1);

    i64 prod = 1;
    for (int j = 0; j < f; ++j) {
        for (const Digits& d : ds) prod = fp::mul(prod, fact(d.digit[j], p), p);
        prod = fp::mul(prod, fp::inv(fact(dt.digit[j], p), p), p);
    }
    i64 jval = fp::mul(fp::sign_pow((n - 1) * (f - 1) + u, p), prod, p);
    return UJ{u, jval};
}

IExponents i_exponents(const SubsetJ& J, const ParamSet& ps) {
    DerivedSets der = derived_ops(J, ps.j_rho);
    std::vector<i64> s_prev = weight_vectors(der.delta_ss, ps).s;
    std::vector<i64> s_ss = weight_vectors(der.ss, ps).s;
    const i64 p = ps.p;

    IExponents r{0, 0, 1, 1};
    i64 w = 1;
    for (int j = 0; j < ps.f; ++j) {
        if (der.j_delta.contains(j + 1)) {
            r.i_chi_s += (p - 1 - s_prev[j]) * w;
            r.p1_chi = fp::mul(r.p1_chi, fact(p - 1 - s_prev[j], p), p);
        }
        if (!der.nss.contains(j + 1)) {
            r.i_chi += (p - 1 - s_ss[j]) * w;
            r.p2_chi = fp::mul(r.p2_chi, fact(p - 1 - s_ss[j], p), p);
        }
        w *= p;
    }
    return r;
}

i64 i_plus(const SubsetJ& J, const ParamSet& ps) {
    if (J == find_j_star(ps.j_rho)) throw error("i_plus: undefined at J*");
    IExponents ie = i_exponents(J, ps);
    if (is_subset(J, ps.j_rho)) return ps.q() - 1 - ie.i_chi_s;
    if (op_delta_ss(J, ps.j_rho) == op_ss(J, ps.j_rho))
        throw error("i_plus: undefined when delta_ss(J) equals J^ss off J_rho");
    i64 s_int = weighted_int(weight_vectors(J, ps).s, ps.p);
    return ie.i_chi - ie.i_chi_s + s_int;
}

i64 i_plus_chain_sum(const SubsetJ& J, const ParamSet& ps) {
    i64 acc = 0;
    for (const SubsetJ& c : delta_ss_chain(J, ps.j_rho)) acc += i_plus(c, ps);
    return acc;
}

i64 mu_js_j(const SubsetJ& J, const ParamSet& ps) {
    if (op_nss(J, ps.j_rho).full()) throw error("mu_js_j: undefined when J^nss is everything");
    WeightVectors w = weight_vectors(J, ps);
    i64 v = fp::sign_pow(digit_sum(w.t_star), ps.p);
    for (int j = 0; j < ps.f; ++j) v = fp::mul(v, fact(w.s[j], ps.p), ps.p);
    return v;
}

i64 mu_js_j_reflected(const SubsetJ& J, const ParamSet& ps) {
    WeightVectors w = weight_vectors(J, ps);
    i64 v = fp::sign_pow(digit_sum(w.t), ps.p);
    for (int j = 0; j < ps.f; ++j) v = fp::mul(v, fact(w.s_star[j], ps.p), ps.p);
    return v;
}

i64 mu_jstar_pair(const ParamSet& ps) {
    if (ps.j_rho.empty() || ps.j_rho.full())
        throw error("mu_jstar_pair: needs J_rho neither empty nor full");
    SubsetJ js = find_j_star(ps.j_rho);
    SubsetJ prev_nss = op_nss(shift(js, -1), ps.j_rho);
    i64 sign = fp::sign_pow(set_intersect(js, prev_nss).size(), ps.p);
    return fp::mul(sign, fp::mul(mu_js_j(js, ps), mu_js_j_reflected(js, ps), ps.p), ps.p);
}

CChiBranch c_chi_branch(const SubsetJ& J, const ParamSet& ps) {
    if (op_delta_ss(J, ps.j_rho) == op_ss(J, ps.j_rho)) return CChiBranch::stable;
    if (is_subset(J, ps.j_rho)) return CChiBranch::inside_rho;
    return CChiBranch::general;
}

i64 c_chi(const SubsetJ& J, const ParamSet& ps) {
    if (!ps.j_rho.full() && J == find_j_star(ps.j_rho)) throw error("c_chi: undefined at J*");
    IExponents ie = i_exponents(J, ps);
    WeightVectors w = weight_vectors(J, ps);
    i64 s_int = weighted_int(w.s, ps.p);
    i64 q = ps.q();

    switch (c_chi_branch(J, ps)) {
        case CChiBranch::stable: {
            if (modq1(ie.i_chi_s - s_int, q) != modq1(ie.i_chi, q))
                throw error("c_chi: stable-branch index identity failed");
            UJ uj = u_and_j(ie.i_chi_s, -s_int, ps.p, ps.f);
            return fp::mul(fp::sign_pow(digit_sum(w.t), ps.p), uj.jval, ps.p);
        }
        case CChiBranch::inside_rho: {
            UJ uj = u_and_j(ie.i_chi_s, -s_int, ps.p, ps.f);
            return uj.jval;
        }
        case CChiBranch::general: {
            i64 ip = i_plus(J, ps);
            UJ num = u_and_j(ie.i_chi_s, -s_int, ps.p, ps.f);
            UJ den = u_and_j(ip, -ie.i_chi - s_int, ps.p, ps.f);
            i64 v = fp::mul(num.jval, fp::inv(den.jval, ps.p), ps.p);
            return fp::mul(fp::sign_pow(digit_sum(w.t), ps.p), v, ps.p);
        }
    }
    throw error("c_chi: unreachable");
}

i64 beta_chain(const SubsetJ& J, const ParamSet& ps) {
    std::vector<i64> ips;
    for (const SubsetJ& c : delta_ss_chain(J, ps.j_rho)) ips.push_back(i_plus(c, ps));
    return u_and_j_multi(ips, ps.p, ps.f).jval;
}

i64 u_chain(const SubsetJ& J, const ParamSet& ps) {
    std::vector<i64> ips;
    for (const SubsetJ& c : delta_ss_chain(J, ps.j_rho)) ips.push_back(i_plus(c, ps));
    return u_and_j_multi(ips, ps.p, ps.f).u;
}

i64 p1_chain_ratio(const SubsetJ& J, const ParamSet& ps) {
    i64 v = 1;
    for (const SubsetJ& c : delta_ss_chain(J, ps.j_rho))
        v = fp::mul(v, i_exponents(c, ps).p1_chi, ps.p);
    for (const SubsetJ& c : delta_ss_chain(op_ss(J, ps.j_rho), ps.j_rho))
        v = fp::mul(v, fp::inv(i_exponents(c, ps).p1_chi, ps.p), ps.p);
    return v;
}

bool admissible_for_cprime(const SubsetJ& J, const ParamSet& ps) {
    if (ps.j_rho.full()) return false;
    if (is_subset(J, ps.j_rho)) return false;
    return !(J == find_j_star(ps.j_rho));
}

i64 c_of_j(const SubsetJ& J, const ParamSet& ps) {
    if (!admissible_for_cprime(J, ps)) throw error("c_of_j: inadmissible J");
    if (c_chi_branch(J, ps) == CChiBranch::stable) return c_chi(J, ps);

    SubsetJ jss = op_ss(J, ps.j_rho);
    i64 v = fp::mul(beta_chain(J, ps), fp::inv(beta_chain(jss, ps), ps.p), ps.p);
    for (const SubsetJ& c : delta_ss_chain(J, ps.j_rho)) v = fp::mul(v, c_chi(c, ps), ps.p);
    for (const SubsetJ& c : delta_ss_chain(jss, ps.j_rho))
        v = fp::mul(v, fp::inv(c_chi(c, ps), ps.p), ps.p);
    return v;
}

i64 c_prime(const SubsetJ& J, const ParamSet& ps) {
    if (!admissible_for_cprime(J, ps)) throw error("c_prime: inadmissible J");
    SubsetJ cap = set_intersect(J, op_nss(shift(J, -1), ps.j_rho));
    i64 v = fp::sign_pow(ps.f - 1 + cap.size(), ps.p);
    v = fp::mul(v, mu_js_j(J, ps), ps.p);
    v = fp::mul(v, i_exponents(J, ps).p2_chi, ps.p);
    v = fp::mul(v, fp::inv(p1_chain_ratio(J, ps), ps.p), ps.p);
    return fp::mul(v, c_of_j(J, ps), ps.p);
}

namespace {

// Per-j table value for alpha'(J).
i64 alpha_prime_table_entry(const SubsetJ& J, const ParamSet& ps, int j) {
    const i64 p = ps.p, r = ps.r[ps.j_rho.mod(j)];
    SubsetJ nss = op_nss(J, ps.j_rho), ss = op_ss(J, ps.j_rho);
    bool j_nss = nss.contains(j), j1_nss = nss.contains(j + 1);
    bool j1_in = J.contains(j + 1), j1_ss = ss.contains(j + 1);
    if (!j_nss && !j1_nss) return 1;
    if (j_nss && !j1_in) return fp::reduce(r + 1, p);
    if (j_nss && j1_ss) return fp::reduce(p - 1 - r, p);
    if (j_nss && j1_nss) return fp::inv(fp::mul(fact(r, p), fact(r, p), p), p);
    // j outside J^nss (hence j in J^ss or off J), j+1 in J^nss
    if (!J.contains(j)) return fp::sub(0, fp::inv(fp::mul(fact(r, p), fact(r + 1, p), p), p), p);
    return fp::sub(0, fp::inv(fp::mul(fact(r + 1, p), fact(r + 2, p), p), p), p);
}

i64 alpha_of_chi(const SubsetJ& Jp, const ParamSet& ps) {
    IExponents ie = i_exponents(Jp, ps);
    i64 s_int = weighted_int(weight_vectors(Jp, ps).s, ps.p);
    UJ jab = u_and_j(ie.i_chi_s, -s_int, ps.p, ps.f);
    Digits d = digits(ie.i_chi_s, ps.p, ps.f);
    i64 v = fp::mul(jab.jval, fp::sign_pow(ps.f - 1, ps.p), ps.p);
    for (int j = 0; j < ps.f; ++j) v = fp::mul(v, fact(ps.p - 1 - d.digit[j], ps.p), ps.p);
    return fp::mul(v, fp::inv(ie.p1_chi, ps.p), ps.p);
}

// Per-j table value for alpha(J), following the k-run case split.
i64 alpha_table_entry(const SubsetJ& J, const ParamSet& ps, int j) {
    const i64 p = ps.p, r = ps.r[ps.j_rho.mod(j)];
    const SubsetJ& rho = ps.j_rho;
    bool j_rho = rho.contains(j), j1_rho = rho.contains(j + 1);
    auto inJ = [&](int x) { return J.contains(x); };

    if (j1_rho && j_rho) return 1;

    if (j1_rho && !j_rho) {
        int k = run_length_after(j, rho) - 1;  // run starting at j+1 has length k+1
        if (k == 0) {
            int c = (inJ(j) ? 4 : 0) | (inJ(j + 1) ? 2 : 0) | (inJ(j + 2) ? 1 : 0);
            switch (c) {
                case 7: return fp::inv(fp::reduce(p - 1 - r, p), p);   // (1,1,1)
                case 3: return 1;                                      // (0,1,1)
                case 6: return fp::inv(fp::reduce(p - 1 - r, p), p);   // (1,1,0)
                case 2: return 1;                                      // (0,1,0)
                case 5: return fp::inv(fp::reduce(p - 1 - r, p), p);   // (1,0,1)
                case 1: return p - 1;                                  // (0,0,1)
                case 4: return fp::inv(fp::reduce(r + 1, p), p);       // (1,0,0)
                default: return 1;                                     // (0,0,0)
            }
        }
        i64 v;
        int c = (inJ(j) ? 4 : 0) | (inJ(j + 1) ? 2 : 0) | (inJ(j + 2) ? 1 : 0);
        switch (c) {
            case 7: v = fp::inv(fp::reduce(p - 1 - r, p), p); break;
            case 3: v = 1; break;
            case 6: v = fp::inv(fp::reduce(p - 1 - r, p), p); break;
            case 2: v = 1; break;
            case 5: v = fp::inv(fp::reduce(r + 1, p), p); break;
            case 1: v = 1; break;
            case 4: v = fp::inv(fp::reduce(r + 1, p), p); break;
            default: v = 1; break;
        }
        if (!inJ(j + k + 1) && inJ(j + k + 2)) v = fp::sub(0, v, p);
        return v;
    }

    if (!j1_rho && !j_rho) {
        i64 rf2 = fp::mul(fact(r, p), fact(r, p), p);
        if (inJ(j) && inJ(j + 1)) return rf2;
        if (inJ(j) && !inJ(j + 1)) return fp::inv(fp::reduce(r + 1, p), p);
        if (!inJ(j) && inJ(j + 1)) return fp::mul(rf2, fp::reduce(p - 1 - r, p), p);
        return 1;
    }

    // j in J_rho, j+1 outside
    i64 rf1 = fp::mul(fact(r + 1, p), fact(r + 1, p), p);
    if (inJ(j) && inJ(j + 1)) return fp::mul(rf1, fp::reduce(p - 2 - r, p), p);
    if (inJ(j) && !inJ(j + 1)) return 1;
    if (!inJ(j) && inJ(j + 1)) return fp::mul(rf1, fp::inv(fp::reduce(r + 1, p), p), p);
    return 1;
}

}  // namespace

CPrimeParts cprime_parts(const SubsetJ& J, const ParamSet& ps) {
    if (!admissible_for_cprime(J, ps)) throw error("cprime_parts: inadmissible J");
    if (c_chi_branch(J, ps) != CChiBranch::general)
        throw error("cprime_parts: needs delta_ss(J) != J^ss");

    const i64 p = ps.p;
    const int f = ps.f;
    SubsetJ jss = op_ss(J, ps.j_rho);
    IExponents ie = i_exponents(J, ps);
    WeightVectors w = weight_vectors(J, ps);
    i64 s_int = weighted_int(w.s, p);

    CPrimeParts out;
    i64 u_prime = u_and_j(i_plus(J, ps), -ie.i_chi - s_int, p, f).u;
    out.u_value = u_chain(J, ps) - u_chain(jss, ps) - u_prime;
    out.a_ss = exponents(J, ps.j_rho).a_ss;

    // alpha' along the mu/P2/digit route
    SubsetJ cap = set_intersect(J, op_nss(shift(J, -1), ps.j_rho));
    Digits neg = digits(-ie.i_chi - s_int, p, f);
    i64 denom = 1;
    for (int j = 0; j < f; ++j) denom = fp::mul(denom, fact(neg.digit[j], p), p);
    out.alpha_prime = fp::sign_pow(cap.size() + digit_sum(w.t), p);
    out.alpha_prime = fp::mul(out.alpha_prime, mu_js_j(J, ps), p);
    out.alpha_prime = fp::mul(out.alpha_prime, ie.p2_chi, p);
    out.alpha_prime = fp::mul(out.alpha_prime, fp::inv(denom, p), p);

    // alpha' along the per-j table route
    out.alpha_prime_j.resize(f);
    i64 tab = fp::sign_pow(op_nss(op_boundary(J), ps.j_rho).size(), p);
    for (int j = 0; j < f; ++j) {
        out.alpha_prime_j[j] = alpha_prime_table_entry(J, ps, j);
        tab = fp::mul(tab, out.alpha_prime_j[j], p);
    }
    out.alpha_prime_table = tab;

    // alpha as the chain ratio
    i64 a = 1;
    for (const SubsetJ& c : delta_ss_chain(J, ps.j_rho)) a = fp::mul(a, alpha_of_chi(c, ps), p);
    for (const SubsetJ& c : delta_ss_chain(jss, ps.j_rho))
        a = fp::mul(a, fp::inv(alpha_of_chi(c, ps), p), p);
    out.alpha = a;

    // alpha per j from the I-set counts
    const int bound = f + 2;
    std::vector<SubsetJ> seqJ(bound + 2), seqS(bound + 2);
    seqJ[0] = J;
    seqS[0] = jss;
    for (int i = 0; i + 1 < bound + 2; ++i) {
        seqJ[i + 1] = op_delta_ss(seqJ[i], ps.j_rho);
        seqS[i + 1] = op_delta_ss(seqS[i], ps.j_rho);
    }
    out.alpha_j_counts.resize(f);
    out.alpha_j_table.resize(f);
    for (int j = 0; j < f; ++j) {
        i64 c1 = 0, c2 = 0, c5 = 0, c6 = 0, c7 = 0, c8 = 0;
        auto tally = [&](const std::vector<SubsetJ>& seq, i64 sgn) {
            for (int i = 0; i <= bound; ++i) {
                bool cur = seq[i].contains(j + 1), nxt = seq[i + 1].contains(j + 1);
                bool in_delta = sym_diff(seq[i], seq[i + 1]).contains(j);
                if (cur && !nxt) {
                    c1 += sgn;
                    if (!in_delta) c5 += sgn;
                } else if (!cur && nxt) {
                    c2 += sgn;
                    if (!in_delta) c6 += sgn;
                } else if (cur && nxt) {
                    if (in_delta) c7 += sgn;
                } else {
                    if (in_delta) c8 += sgn;
                }
            }
        };
        tally(seqJ, +1);
        tally(seqS, -1);
        i64 i3 = c5 - c7;
        i64 i4 = c6 - c8;
        bool rho = ps.j_rho.contains(j);
        i64 r = ps.r[j];
        i64 v = fp::pow(fact(r + (rho ? 1 : 0), p), 2 * c1, p);
        v = fp::mul(v, fp::pow(fact(p - 2 - r, p), 2 * c2, p), p);
        v = fp::mul(v, fp::pow(fp::reduce(p - 1 - r - (rho ? 1 : 0), p), i3, p), p);
        v = fp::mul(v, fp::pow(fp::reduce(r + 1, p), i4, p), p);
        out.alpha_j_counts[j] = v;
        out.alpha_j_table[j] = alpha_table_entry(J, ps, j);
    }
    return out;
}

}  // namespace weights
}  // namespace diamond

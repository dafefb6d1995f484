#include "diamond/checks.hpp"

#include <algorithm>
#include <functional>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace diamond {
namespace checks {

namespace {

constexpr const char* kVersion = "1.0.0";

using RecordSink = std::vector<CheckRecord>;

void add(RecordSink& out, const std::string& slug, const ParamSet& ps, const std::string& subset,
         bool pass, const std::string& lhs = "", const std::string& rhs = "",
         const std::string& detail = "") {
    out.push_back(CheckRecord{slug, params_hash(ps), subset, pass, lhs, rhs, detail});
}

// Sweep over (f, J_rho, trial) strict parameter sets.
void for_each_params(const Config& cfg, const std::function<void(const ParamSet&)>& fn,
                     bool skip_empty_rho = false, bool skip_full_rho = true) {
    if (cfg.params) {
        fn(*cfg.params);
        return;
    }
    for (int f = cfg.f_min; f <= cfg.f_max; ++f) {
        for (const SubsetJ& j_rho : all_subsets(f)) {
            if (skip_full_rho && j_rho.full()) continue;
            if (skip_empty_rho && j_rho.empty()) continue;
            if (cfg.j_rho_bits && j_rho.bits != *cfg.j_rho_bits) continue;
            for (int t = 0; t < cfg.trials; ++t) {
                i64 p = cfg.primes[t % cfg.primes.size()];
                std::uint64_t seed =
                    cfg.seed * 1000003ull + static_cast<std::uint64_t>(f) * 101 + j_rho.bits * 13 + t;
                ParamSet ps = (cfg.mode == Mode::strict) ? sample(p, f, j_rho, seed)
                                                         : sample_relaxed(p, f, j_rho, seed);
                fn(ps);
            }
        }
    }
}

std::string fe(const ParamSet& ps, const FqElem& x) { return ps.F.to_string(x); }

// ---- lemma bodies -------------------------------------------------------

void run_compare_sj(const Config& cfg, RecordSink& out) {
    for_each_params(cfg, [&](const ParamSet& ps) {
        for (const SubsetJ& J : all_subsets(ps.f)) {
            weights::WeightVectors w = weights::weight_vectors(J, ps);
            DerivedSets der = derived_ops(J, ps.j_rho);
            std::vector<i64> s_prev = weights::weight_vectors(der.delta_ss, ps).s;
            std::vector<i64> s_ss = weights::weight_vectors(der.ss, ps).s;
            bool ok = true;
            for (int j = 0; j < ps.f; ++j) {
                i64 d1 = der.j_delta.contains(j) ? 1 : 0;
                i64 want1 = der.j_delta.contains(j + 1) ? ps.p - 2 - s_prev[j] + d1 : s_prev[j] + d1;
                i64 d2 = der.nss.contains(j) ? 1 : 0;
                i64 want2 = der.nss.contains(j + 1) ? ps.p - 2 - s_ss[j] + d2 : s_ss[j] + d2;
                ok = ok && w.s[j] == want1 && w.s[j] == want2;
            }
            add(out, "compare-sj", ps, to_string(J), ok);
        }
    });
}

void run_t_t_s(const Config& cfg, RecordSink& out) {
    for_each_params(cfg, [&](const ParamSet& ps) {
        for (const SubsetJ& J : all_subsets(ps.f)) {
            weights::WeightVectors w = weights::weight_vectors(J, ps);
            bool ok = true;
            for (const SubsetJ& Jp : all_subsets(ps.f)) {
                weights::WeightVectors wp = weights::weight_vectors(Jp, ps);
                i64 e = weights::digit_sum(w.t) + weights::digit_sum(w.t_star) +
                        weights::digit_sum(wp.s);
                ok = ok && (e % 2 == 0);
            }
            add(out, "t-t-s", ps, to_string(J), ok);
        }
    });
}

void run_j_star(const Config& cfg, RecordSink& out) {
    for_each_params(cfg, [&](const ParamSet& ps) {
        SubsetJ js = find_j_star(ps.j_rho);
        for (const SubsetJ& J : all_subsets(ps.f)) {
            weights::WeightVectors w = weights::weight_vectors(J, ps);
            SubsetJ prev = op_delta_ss(J, ps.j_rho);
            weights::WeightVectors wp = weights::weight_vectors(prev, ps);
            bool sigma_eq = w.s_star == wp.s && w.t_star == wp.t;
            bool cond = op_j_delta(J, ps.j_rho).full();
            bool ok = (sigma_eq == cond) && (cond == (J == js));
            add(out, "j-star", ps, to_string(J), ok,
                sigma_eq ? "sigma-equal" : "sigma-distinct", cond ? "delta-full" : "delta-proper");
        }
    });
}

void run_j0_delta(const Config& cfg, RecordSink& out) {
    for_each_params(cfg, [&](const ParamSet& ps) {
        const i64 p = ps.p;
        for (const SubsetJ& J : all_subsets(ps.f)) {
            DerivedSets der = derived_ops(J, ps.j_rho);
            SubsetJ j0 = shift(set_union(der.ss, op_nss(shift(der.c, -1), ps.j_rho)), 1);
            std::vector<i64> s_j = weights::weight_vectors(J, ps).s;
            std::vector<i64> s_j0 = weights::weight_vectors(j0, ps).s;
            std::vector<i64> s_ss = weights::weight_vectors(der.ss, ps).s;
            SubsetJ j0_cap_nss = set_intersect(j0, der.nss);
            SubsetJ j0_d_j = sym_diff(j0, J);
            SubsetJ j0_d_ss = sym_diff(j0, der.ss);
            bool ok = true;
            for (int j = 0; j < ps.f; ++j) {
                i64 cp = 2 * (j0_cap_nss.contains(j) ? 1 : 0) + p - 1 - s_j0[j] +
                         (j0_d_j.contains(j) ? 1 : 0);
                i64 lhs1 = (j0.contains(j + 1) ? 1 : -1) *
                           (2 * (j0_cap_nss.contains(j) ? 1 : 0) + (der.ss.contains(j) ? 1 : 0) -
                            (j0_d_ss.contains(j) ? 1 : 0) + (j0_d_j.contains(j) ? 1 : 0));
                i64 rhs1 = (der.ss.contains(j) ? 1 : 0) +
                           (der.nss.contains(j) ? (J.contains(j + 1) ? -1 : 1) : 0);
                i64 lhs2 = s_j[j] + (j0_d_j.contains(j + 1) ? 0 : cp);
                i64 rhs2 = (j0_d_j.contains(j + 1) ? s_j[j] : p - 1);
                i64 lhs3 = (der.nss.contains(j + 1) ? p - 1 : s_ss[j]) +
                           (j0_d_j.contains(j + 1) ? 0 : cp);
                i64 rhs3 = (j0_cap_nss.contains(j + 1) ? p : 0) +
                           (j0_d_ss.contains(j + 1) ? s_ss[j] : p - 1);
                ok = ok && lhs1 == rhs1 && lhs2 == rhs2 && lhs3 == rhs3;
            }
            add(out, "j0-delta", ps, to_string(J), ok);
        }
    });
}

void run_jab(const Config& cfg, RecordSink& out) {
    for_each_params(cfg, [&](const ParamSet& ps) {
        SubsetJ js = find_j_star(ps.j_rho);
        for (const SubsetJ& J : all_subsets(ps.f)) {
            if (J == js) continue;
            DerivedSets der = derived_ops(J, ps.j_rho);
            weights::IExponents ie = weights::i_exponents(J, ps);
            i64 s_int = weights::weighted_int(weights::weight_vectors(J, ps).s, ps.p);
            i64 lhs = weights::u_and_j(ie.i_chi_s, -s_int, ps.p, ps.f).jval;

            std::vector<i64> s_prev = weights::weight_vectors(der.delta_ss, ps).s;
            i64 sign_exp = 1;
            i64 num = 1, den = 1;
            for (int j = 0; j < ps.f; ++j) {
                bool jn = der.j_delta.contains(j), j1 = der.j_delta.contains(j + 1);
                if (j1) sign_exp += s_prev[j];
                if (j1 && !jn) num = fp::mul(num, fp::sub(0, s_prev[j] + 1, ps.p), ps.p);
                if (!j1 && jn) den = fp::mul(den, fp::reduce(s_prev[j] + 1, ps.p), ps.p);
            }
            i64 rhs = fp::mul(fp::sign_pow(sign_exp, ps.p),
                              fp::mul(num, fp::inv(den, ps.p), ps.p), ps.p);
            add(out, "jab", ps, to_string(J), lhs == rhs, std::to_string(lhs), std::to_string(rhs));
        }
    });
}

void run_ichij_sj(const Config& cfg, RecordSink& out) {
    for_each_params(cfg, [&](const ParamSet& ps) {
        for (const SubsetJ& J : all_subsets(ps.f)) {
            if (is_subset(J, ps.j_rho)) continue;
            DerivedSets der = derived_ops(J, ps.j_rho);
            weights::IExponents ie = weights::i_exponents(J, ps);
            i64 s_int = weights::weighted_int(weights::weight_vectors(J, ps).s, ps.p);
            std::vector<i64> s_ss = weights::weight_vectors(der.ss, ps).s;
            weights::Digits d = weights::digits(ie.i_chi + s_int, ps.p, ps.f);
            bool ok = true;
            for (int j = 0; j < ps.f; ++j) {
                i64 want = der.nss.contains(j + 1) ? ps.p - 1 - s_ss[j] : 0;
                ok = ok && d.digit[j] == want;
            }
            add(out, "ichij-sj", ps, to_string(J), ok);
        }
    });
}

void run_mu_jstar(const Config& cfg, RecordSink& out) {
    for_each_params(
        cfg,
        [&](const ParamSet& ps) {
            i64 v = weights::mu_jstar_pair(ps);
            add(out, "mu-jstar", ps, to_string(find_j_star(ps.j_rho)), v == 1, std::to_string(v),
                "1");
        },
        /*skip_empty_rho=*/true);
}

void run_mu_empty(const Config& cfg, RecordSink& out) {
    for_each_params(cfg, [&](const ParamSet& ps) {
        SubsetJ empty = subset_of(0, ps.f);
        FqElem up = leadterm::evaluate_class(leadterm::up_chi_class(empty, ps), ps);
        FqElem nu0 = matrices::nu(empty, empty, ps);
        bool ok = up == ps.xi && nu0 == ps.xi;
        add(out, "mu-empty-consistency", ps, "{}", ok, fe(ps, up), fe(ps, ps.xi));
    });
}

i64 mutated_mu(const SubsetJ& J, const ParamSet& ps) {
    ParamSet alt = ps;
    alt.r[0] += 1;  // incoherent substitution confined to the mu factor
    return weights::mu_js_j(J, alt);
}

void run_cprime(const Config& cfg, RecordSink& out, bool simple_regime) {
    const char* slug = simple_regime ? "cprime-simple" : "cprime-new";
    for_each_params(cfg, [&](const ParamSet& ps) {
        for (const SubsetJ& J : all_subsets(ps.f)) {
            if (!weights::admissible_for_cprime(J, ps)) continue;
            bool stable = weights::c_chi_branch(J, ps) == weights::CChiBranch::stable;
            if (stable != simple_regime) continue;
            i64 got;
            if (cfg.mutate == "r") {
                SubsetJ cap = set_intersect(J, op_nss(shift(J, -1), ps.j_rho));
                got = fp::sign_pow(ps.f - 1 + cap.size(), ps.p);
                got = fp::mul(got, mutated_mu(J, ps), ps.p);
                got = fp::mul(got, weights::i_exponents(J, ps).p2_chi, ps.p);
                got = fp::mul(got, fp::inv(weights::p1_chain_ratio(J, ps), ps.p), ps.p);
                got = fp::mul(got, weights::c_of_j(J, ps), ps.p);
            } else {
                got = weights::c_prime(J, ps);
            }
            i64 want = fp::sign_pow(exponents(J, ps.j_rho).a, ps.p);
            add(out, slug, ps, to_string(J), got == want, std::to_string(got),
                std::to_string(want));
        }
    });
}

void run_cprime_parts(const Config& cfg, RecordSink& out) {
    for_each_params(cfg, [&](const ParamSet& ps) {
        for (const SubsetJ& J : all_subsets(ps.f)) {
            if (!weights::admissible_for_cprime(J, ps)) continue;
            if (weights::c_chi_branch(J, ps) != weights::CChiBranch::general) continue;
            weights::CPrimeParts parts = weights::cprime_parts(J, ps);
            bool ok_u = parts.u_value == parts.a_ss;
            bool ok_ap = parts.alpha_prime == parts.alpha_prime_table;
            i64 prod = parts.alpha;
            for (int j = 0; j < ps.f; ++j) prod = fp::mul(prod, parts.alpha_prime_j[j], ps.p);
            bool ok_aa = prod == 1;
            bool ok_tables = parts.alpha_j_counts == parts.alpha_j_table;
            i64 via_counts = 1;
            for (i64 v : parts.alpha_j_counts) via_counts = fp::mul(via_counts, v, ps.p);
            bool ok_alpha = via_counts == parts.alpha;
            bool ok = ok_u && ok_ap && ok_aa && ok_tables && ok_alpha;
            std::string detail;
            if (!ok)
                detail = std::string(ok_u ? "" : "U!=A^ss ") + (ok_ap ? "" : "alpha' mismatch ") +
                         (ok_aa ? "" : "alpha*prod!=1 ") + (ok_tables ? "" : "table mismatch ") +
                         (ok_alpha ? "" : "count-product mismatch");
            add(out, "cprime-parts", ps, to_string(J), ok,
                std::to_string(parts.u_value), std::to_string(parts.a_ss), detail);
        }
    });
}

void run_up_prime(const Config& cfg, RecordSink& out) {
    int flip = cfg.mutate == "table-case" ? 2 : 0;
    for_each_params(cfg, [&](const ParamSet& ps) {
        for (const SubsetJ& J : all_subsets(ps.f)) {
            leadterm::UpPrimeCheck c = leadterm::verify_up_prime(J, ps, flip);
            add(out, "up-prime", ps, to_string(J), c.ok, "", "", c.detail);
        }
    });
}

void run_up_closed(const Config& cfg, RecordSink& out) {
    int flip = cfg.mutate == "table-case" ? 2 : 0;
    bool corrupt_d = cfg.mutate == "d";
    for_each_params(cfg, [&](const ParamSet& ps) {
        for (const SubsetJ& J : all_subsets(ps.f)) {
            bool ok;
            std::string lhs, rhs, detail;
            try {
                leadterm::UpClosedReport rep = leadterm::verify_up_closed(J, ps, flip);
                if (corrupt_d) {
                    for (int j = 0; j < ps.f; ++j)
                        if (!ps.j_rho.contains(j)) {
                            rep.expect_d[j] += 1;
                            break;
                        }
                    std::vector<i64> got_d(ps.f, 0);
                    for (auto& [j, e] : rep.got.d_exp) got_d[j] = e;
                    rep.ok = rep.got.sign == rep.expect_sign &&
                             rep.got.beta_exp == rep.expect_beta && got_d == rep.expect_d;
                }
                ok = rep.ok;
                lhs = leadterm::to_string(rep.got);
                rhs = "(-1)^" + std::to_string(exponents(J, ps.j_rho).a) + " beta^" +
                      std::to_string(rep.expect_beta);
                detail = rep.detail;
                if (ok) {
                    ChainExponents ce = exponents_via_chain(J, ps.j_rho);
                    Exponents ex = exponents(J, ps.j_rho);
                    ok = ce.a == ex.a && ce.a_ss == ex.a_ss && ce.b == ex.b &&
                         ce.d_exp == d_exponent_vector(J, ps.j_rho);
                    if (!ok) detail = "chain-route exponents disagree with closed forms";
                }
            } catch (const error& e) {
                ok = false;
                detail = e.what();
            }
            add(out, "up-closed", ps, to_string(J), ok, lhs, rhs, detail);
        }
    });
}

void run_sss_product(const Config& cfg, RecordSink& out) {
    struct QCase {
        i64 p;
        int f;
    };
    std::vector<QCase> cases = {{5, 1}, {7, 1}, {3, 2}, {5, 2}};
    for (const QCase& qc : cases) {
        ParamSet ps = sample_relaxed(qc.p, qc.f, subset_of(0, qc.f), cfg.seed + qc.p);
        const i64 q = ps.q();
        Rng rng(cfg.seed * 77 + q);
        int N = cfg.precision ? cfg.precision : groupalg::precision_for(qc.f, 2);
        int pairs = cfg.op_trials, fails = 0, done = 0;
        std::string first_fail;
        while (done < pairs) {
            i64 a = 1 + rng.below(q - 2), b = 1 + rng.below(q - 2);
            if (a + b == q - 1) continue;
            ++done;
            groupalg::OpCheck c = groupalg::check_product_pair(ps, a, b, N,
                                                               cfg.parallel ? groupalg::Exec::parallel
                                                                            : groupalg::Exec::serial);
            if (!c.ok && first_fail.empty())
                first_fail = "(a,b)=(" + std::to_string(a) + "," + std::to_string(b) + ") " + c.detail;
            fails += c.ok ? 0 : 1;
        }
        int Nm = cfg.precision ? cfg.precision : groupalg::precision_for(qc.f, 3);
        int triples = std::max(1, cfg.op_trials / 2), tfails = 0;
        for (int t = 0; t < triples; ++t) {
            std::vector<i64> as(3);
            i64 run = 0;
            bool legal = true;
            for (int i = 0; i < 3; ++i) {
                as[i] = 1 + rng.below(q - 2);
                run += as[i];
                if (i < 2 && run % (q - 1) == 0) legal = false;
            }
            if (!legal) {
                --t;
                continue;
            }
            groupalg::OpCheck c = groupalg::check_product_multi(ps, as, Nm,
                                                                cfg.parallel ? groupalg::Exec::parallel
                                                                             : groupalg::Exec::serial);
            if (!c.ok && first_fail.empty()) first_fail = "triple failure: " + c.detail;
            tfails += c.ok ? 0 : 1;
        }
        add(out, "sss-product", ps, "q=" + std::to_string(q), fails == 0 && tfails == 0,
            std::to_string(pairs) + " pairs", std::to_string(triples) + " triples", first_fail);
    }
}

groupalg::Mutation parse_mutation(const std::string& m) {
    if (m == "s-sign") return groupalg::Mutation::s_sign;
    if (m == "coset") return groupalg::Mutation::coset;
    return groupalg::Mutation::none;
}

void run_ssv(const Config& cfg, RecordSink& out) {
    groupalg::Mutation mut = parse_mutation(cfg.mutate);
    int f_lo = cfg.params ? cfg.params->f : cfg.f_min;
    int f_hi = cfg.params ? cfg.params->f : cfg.f_max;
    for (int f = f_lo; f <= f_hi; ++f) {
        SubsetJ jr = subset_of(f > 1 ? 1 : 0, f);
        ParamSet ps = cfg.params ? *cfg.params
                      : cfg.mode == Mode::strict
                          ? sample(cfg.primes[0], f, jr, cfg.seed + f)
                          : sample_relaxed(cfg.primes[0], f, jr, cfg.seed + f);
        const i64 q = ps.q();
        Rng rng(cfg.seed * 31 + f);
        int N = cfg.precision ? cfg.precision : groupalg::precision_for(f, 2);
        int fails = 0, done = 0;
        std::string first_fail;
        while (done < cfg.op_trials) {
            SubsetJ J = subset_of(static_cast<std::uint32_t>(rng.below(1 << f)), f);
            i64 a = 1 + rng.below(q - 2);
            i64 b = rng.below(q - 1);
            i64 s_int = weights::weighted_int(weights::weight_vectors(J, ps).s, ps.p);
            auto div = [&](i64 x) { return ((x % (q - 1)) + (q - 1)) % (q - 1) == 0; };
            if (div(a) || div(a - b) || div(a - b - s_int)) continue;
            ++done;
            groupalg::OpCheck c = groupalg::check_ssv(ps, J, a, b, N, mut,
                                                      cfg.parallel ? groupalg::Exec::parallel
                                                                   : groupalg::Exec::serial);
            if (!c.ok && first_fail.empty())
                first_fail = "J=" + to_string(J) + " (a,b)=(" + std::to_string(a) + "," +
                             std::to_string(b) + ") " + c.detail;
            fails += c.ok ? 0 : 1;
        }
        add(out, "ssv", ps, "f=" + std::to_string(f), fails == 0,
            std::to_string(cfg.op_trials) + " trials", "", first_fail);
    }
}

void run_pr(const Config& cfg, RecordSink& out, weights::CChiBranch branch, const char* slug) {
    for_each_params(cfg, [&](const ParamSet& ps) {
        int N = cfg.precision ? cfg.precision : groupalg::precision_for(ps.f, 2);
        SubsetJ js = find_j_star(ps.j_rho);
        int count = 0;
        for (const SubsetJ& J : all_subsets(ps.f)) {
            if (J.empty() || J == js) continue;
            if (weights::c_chi_branch(J, ps) != branch) continue;
            if (branch == weights::CChiBranch::inside_rho && !is_subset(J, ps.j_rho)) continue;
            ++count;
            groupalg::OpCheck c = groupalg::check_pr(ps, J, N,
                                                     cfg.parallel ? groupalg::Exec::parallel
                                                                  : groupalg::Exec::serial);
            add(out, slug, ps, to_string(J), c.ok,
                "v=" + std::to_string(c.valuation) + " lead=" + fe(ps, c.leading), "", c.detail);
        }
        if (count == 0) add(out, slug, ps, "-", true, "", "", "no admissible J at this (f, J_rho)");
    });
}

void run_conjugation(const Config& cfg, RecordSink& out) {
    for_each_params(
        cfg,
        [&](const ParamSet& ps) {
            matrices::ConstMatrix nu = matrices::build_extended_nu(ps);
            matrices::InvariantData inv0 = matrices::extract_invariants(nu, ps);
            matrices::Canonical canon = matrices::canonicalize(nu, ps);
            Rng rng(cfg.seed * 911 + ps.j_rho.bits);
            bool ok = true;
            std::string detail;
            int rounds = std::max(1, cfg.op_trials);
            for (int t = 0; t < rounds && ok; ++t) {
                std::vector<FqElem> q;
                for (int i = 0; i < (1 << ps.f); ++i)
                    q.push_back(ps.F.from_index(1 + rng.below(ps.F.q() - 1)));
                matrices::ConstMatrix conj = matrices::conjugate_diagonal(nu, q, ps);
                if (!matrices::conjugation_conditions_hold(conj, ps)) {
                    ok = false;
                    detail = "conjugate lost the pattern conditions";
                    break;
                }
                matrices::InvariantData inv1 = matrices::extract_invariants(conj, ps);
                if (!(inv1.at_empty == inv0.at_empty) || !(inv1.at_jstar == inv0.at_jstar) ||
                    inv1.at_j != inv0.at_j) {
                    ok = false;
                    detail = "invariants moved under diagonal conjugation";
                    break;
                }
                if (!(matrices::canonicalize(conj, ps).mat == canon.mat)) {
                    ok = false;
                    detail = "canonical form not conjugation-invariant";
                    break;
                }
            }
            if (ok) {
                if (!(matrices::canonicalize(canon.mat, ps).mat == canon.mat)) {
                    ok = false;
                    detail = "canonicalize not idempotent";
                }
            }
            if (ok) {
                matrices::ConstMatrix recon = matrices::reconstruct_from_invariants(inv0, ps);
                if (!(recon == canon.mat)) {
                    ok = false;
                    detail = "reconstruction differs from canonical form";
                }
            }
            add(out, "conjugation", ps, to_string(ps.j_rho), ok, "", "", detail);
        },
        /*skip_empty_rho=*/true);
}

void run_theorem(const Config& cfg, RecordSink& out) {
    for_each_params(
        cfg,
        [&](const ParamSet& ps) {
            matrices::TheoremOptions opt;
            if (cfg.mutate == "d") {
                for (int j = 0; j < ps.f; ++j)
                    if (!ps.j_rho.contains(j)) {
                        opt.mutate_d_index = j;
                        break;
                    }
            }
            matrices::TheoremReport rep = matrices::verify_main_theorem(ps, opt);
            std::string detail;
            for (const std::string& s : rep.failures) detail += s + "; ";
            if (rep.ok)
                for (const std::string& s : rep.table) detail += s + "; ";
            add(out, "theorem", ps, to_string(ps.j_rho), rep.ok,
                std::to_string(rep.table.size()) + " invariants", "", detail);
        },
        /*skip_empty_rho=*/true);
}

}  // namespace

const std::vector<std::string>& all_slugs() {
    static const std::vector<std::string> slugs = {
        "compare-sj", "t-t-s",        "j-star",      "j0-delta",     "jab",
        "ichij-sj",   "sss-product",  "ssv",         "pr-hu",        "pr-dl",
        "pr-new",     "cprime-simple", "cprime-new", "cprime-parts", "up-prime",
        "up-closed",  "mu-jstar",     "mu-empty-consistency", "conjugation", "theorem"};
    return slugs;
}

bool is_slug(const std::string& s) {
    const auto& v = all_slugs();
    return std::find(v.begin(), v.end(), s) != v.end();
}

std::vector<CheckRecord> run_slug(const std::string& slug, const Config& cfg) {
    RecordSink out;
    if (slug == "compare-sj") run_compare_sj(cfg, out);
    else if (slug == "t-t-s") run_t_t_s(cfg, out);
    else if (slug == "j-star") run_j_star(cfg, out);
    else if (slug == "j0-delta") run_j0_delta(cfg, out);
    else if (slug == "jab") run_jab(cfg, out);
    else if (slug == "ichij-sj") run_ichij_sj(cfg, out);
    else if (slug == "sss-product") run_sss_product(cfg, out);
    else if (slug == "ssv") run_ssv(cfg, out);
    else if (slug == "pr-hu") run_pr(cfg, out, weights::CChiBranch::stable, "pr-hu");
    else if (slug == "pr-dl") run_pr(cfg, out, weights::CChiBranch::inside_rho, "pr-dl");
    else if (slug == "pr-new") run_pr(cfg, out, weights::CChiBranch::general, "pr-new");
    else if (slug == "cprime-simple") run_cprime(cfg, out, true);
    else if (slug == "cprime-new") run_cprime(cfg, out, false);
    else if (slug == "cprime-parts") run_cprime_parts(cfg, out);
    else if (slug == "up-prime") run_up_prime(cfg, out);
    else if (slug == "up-closed") run_up_closed(cfg, out);
    else if (slug == "mu-jstar") run_mu_jstar(cfg, out);
    else if (slug == "mu-empty-consistency") run_mu_empty(cfg, out);
    else if (slug == "conjugation") run_conjugation(cfg, out);
    else if (slug == "theorem") run_theorem(cfg, out);
    else throw error("unknown lemma slug: " + slug);
    sort_records(out);
    return out;
}

std::vector<CheckRecord> run_all(const Config& cfg) {
    std::vector<CheckRecord> out;
    for (const std::string& slug : all_slugs()) {
        std::vector<CheckRecord> recs = run_slug(slug, cfg);
        out.insert(out.end(), recs.begin(), recs.end());
    }
    sort_records(out);
    return out;
}

bool all_pass(const std::vector<CheckRecord>& recs) {
    return std::all_of(recs.begin(), recs.end(), [](const CheckRecord& r) { return r.pass; });
}

void sort_records(std::vector<CheckRecord>& recs) {
    std::sort(recs.begin(), recs.end(), [](const CheckRecord& a, const CheckRecord& b) {
        return std::tie(a.slug, a.params_hash, a.subset) < std::tie(b.slug, b.params_hash, b.subset);
    });
}

std::string report_json(const std::string& config_desc, const std::vector<CheckRecord>& recs) {
    nlohmann::json j;
    j["tool-version"] = kVersion;
    j["config"] = config_desc;
    nlohmann::json arr = nlohmann::json::array();
    for (const CheckRecord& r : recs) {
        nlohmann::json c;
        c["slug"] = r.slug;
        c["params"] = r.params_hash;
        c["subset"] = r.subset;
        c["status"] = r.pass ? "pass" : "fail";
        nlohmann::json d;
        if (!r.lhs.empty()) d["lhs"] = r.lhs;
        if (!r.rhs.empty()) d["rhs"] = r.rhs;
        if (!r.detail.empty()) d["note"] = r.detail;
        c["details"] = d;
        arr.push_back(c);
    }
    j["checks"] = arr;
    return j.dump(2);
}

std::string report_text(const std::vector<CheckRecord>& recs, bool verbose) {
    size_t pass = 0;
    std::string s;
    std::string cur;
    size_t slug_pass = 0, slug_total = 0;
    auto flush = [&]() {
        if (!cur.empty())
            s += (slug_pass == slug_total ? "PASS " : "FAIL ") + cur + "  (" +
                 std::to_string(slug_pass) + "/" + std::to_string(slug_total) + ")\n";
        slug_pass = slug_total = 0;
    };
    for (const CheckRecord& r : recs) {
        if (r.slug != cur) {
            flush();
            cur = r.slug;
        }
        ++slug_total;
        if (r.pass) {
            ++pass;
            ++slug_pass;
            if (verbose && r.slug == "theorem" && !r.detail.empty())
                s += "  " + r.slug + " J_rho=" + r.subset + ": " + r.detail + "\n";
        } else {
            s += "  fail " + r.slug + " params=" + r.params_hash + " J=" + r.subset +
                 (r.detail.empty() ? "" : " : " + r.detail) +
                 (r.lhs.empty() ? "" : " lhs=" + r.lhs + " rhs=" + r.rhs) + "\n";
        }
    }
    flush();
    s += std::to_string(pass) + "/" + std::to_string(recs.size()) + " checks passed\n";
    return s;
}

}  // namespace checks
}  // namespace diamond

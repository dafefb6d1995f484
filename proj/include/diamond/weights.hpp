#pragma once

#include "diamond/params.hpp"
#include "diamond/subsets.hpp"

namespace diamond {
namespace weights {

// Prime-field values are carried as residues in [0, p); every constant in
// this module lands in the prime subfield.

struct WeightVectors {
    std::vector<i64> s;       // s^J
    std::vector<i64> t;       // t^J
    std::vector<i64> s_star;  // p-1-s^J
    std::vector<i64> t_star;  // r-t^J
};

WeightVectors weight_vectors(const SubsetJ& J, const ParamSet& ps);

// Sum x_j p^j as a plain integer.
i64 weighted_int(const std::vector<i64>& x, i64 p);
// Parity workhorse for signs (-1)^{x}: since p is odd this is sum x_j.
i64 digit_sum(const std::vector<i64>& x);

struct Character {
    i64 a1, a2;  // residues mod q-1, in [0, q-2]
    bool operator==(const Character&) const = default;
};

Character chi(const SubsetJ& J, const ParamSet& ps);
Character chi_s(const SubsetJ& J, const ParamSet& ps);
Character conj_s(const Character& ch);

struct Digits {
    i64 a_q;                 // canonical representative in [0, q-2]
    std::vector<i64> digit;  // base-p digits of a_q, length f
};

Digits digits(i64 a, i64 p, int f);

struct UJ {
    i64 u;     // integer
    i64 jval;  // in [0, p), nonzero
};

UJ u_and_j(i64 a, i64 b, i64 p, int f);
// Empty list gives {0, 1}; singleton gives {0, 1}.
UJ u_and_j_multi(const std::vector<i64>& as, i64 p, int f);

struct IExponents {
    i64 i_chi_s;  // integer, class mod q-1 is what matters
    i64 i_chi;
    i64 p1_chi;   // in [0, p)
    i64 p2_chi;
};

IExponents i_exponents(const SubsetJ& J, const ParamSet& ps);

// Branches on J inside J_rho (q-1-i_chi_s) versus the general position
// form i_chi - i_chi_s + s^J; undefined at J = J*.
i64 i_plus(const SubsetJ& J, const ParamSet& ps);
// Sum of i_plus over the delta_ss-chain of J.
i64 i_plus_chain_sum(const SubsetJ& J, const ParamSet& ps);

// mu_{J^s,J} = (-1)^{t^{J^s}} prod (s^J_j)!; needs J^nss proper.
i64 mu_js_j(const SubsetJ& J, const ParamSet& ps);
// The reflected closed form (-1)^{t^J} prod (s^{J^s}_j)!.
i64 mu_js_j_reflected(const SubsetJ& J, const ParamSet& ps);

// The J*-pair product with its sign, equal to 1 when J_rho is neither
// empty nor full.
i64 mu_jstar_pair(const ParamSet& ps);

enum class CChiBranch { stable, inside_rho, general };

CChiBranch c_chi_branch(const SubsetJ& J, const ParamSet& ps);
i64 c_chi(const SubsetJ& J, const ParamSet& ps);

// Chain constants.
i64 beta_chain(const SubsetJ& J, const ParamSet& ps);  // leading term of the stacked operator scalar
i64 u_chain(const SubsetJ& J, const ParamSet& ps);
i64 p1_chain_ratio(const SubsetJ& J, const ParamSet& ps);

i64 c_of_j(const SubsetJ& J, const ParamSet& ps);
i64 c_prime(const SubsetJ& J, const ParamSet& ps);

// Pieces of the closed-form proof of c', each computed along two
// independent routes so the identities can be checked externally.
struct CPrimeParts {
    i64 u_value;             // u(J) - u(J^ss) - u'(J)
    i64 a_ss;                // expected value of u_value
    i64 alpha_prime;         // from the mu/P2/digit route
    i64 alpha_prime_table;   // sign * per-j table product
    i64 alpha;               // chain ratio of alpha(chi)
    std::vector<i64> alpha_prime_j;   // the six-case per-j table entries
    std::vector<i64> alpha_j_counts;  // per-j value from I-set counts
    std::vector<i64> alpha_j_table;   // per-j value from the case tables
};

CPrimeParts cprime_parts(const SubsetJ& J, const ParamSet& ps);

// True for the J admissible to c'/gamma: J not inside J_rho and J != J*.
bool admissible_for_cprime(const SubsetJ& J, const ParamSet& ps);

}  // namespace weights
}  // namespace diamond

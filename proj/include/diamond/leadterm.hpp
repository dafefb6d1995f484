#pragma once

#include <array>
#include <map>

#include "diamond/params.hpp"
#include "diamond/subsets.hpp"
#include "diamond/weights.hpp"

namespace diamond {
namespace leadterm {

// Class of an element of the deformation ring modulo 1-units:
// sign * p^p_exp * beta^beta_exp * prod d_j^... * prod X_j^... Y_j^...
struct Monomial {
    int sign = 1;
    i64 p_exp = 0;
    i64 beta_exp = 0;
    std::map<int, i64> d_exp;
    std::map<int, i64> x_exp;
    std::map<int, i64> y_exp;

    static Monomial one() { return Monomial{}; }
    Monomial times(const Monomial& o) const;
    Monomial inverse() const;
    // Apply X_j Y_j -> p until min(x_exp, y_exp) = 0 at each j.
    Monomial reduced() const;
    bool xy_free() const;
    bool operator==(const Monomial&) const = default;
};

std::string to_string(const Monomial& m);

// The five-case per-embedding factor of U_p(chi_J)'.
Monomial up_chi_factor(const SubsetJ& J, int j, const ParamSet& ps);
// Same, with the sign of one table case flipped (mutation hook; cases 1..5).
Monomial up_chi_factor_mutated(const SubsetJ& J, int j, const ParamSet& ps, int flip_case);

// [beta]^{|J^c|-|J|} times the product of the per-embedding factors.
Monomial up_chi_class(const SubsetJ& J, const ParamSet& ps);

// Chain ratio of the U_p classes, reduced; X/Y must cancel completely.
Monomial tilde_up(const SubsetJ& J, const ParamSet& ps, int mutate_case = 0);

struct UpClosedReport {
    bool ok;
    Monomial got;
    int expect_sign;
    i64 expect_beta;
    std::vector<i64> expect_d;
    std::string detail;
};

// Compares the reduced chain class against the closed form
// (-1)^{A(J)} beta^{B(J)} d(J); the power of p is reported, not constrained.
UpClosedReport verify_up_closed(const SubsetJ& J, const ParamSet& ps, int mutate_case = 0);

// F-value of a fully reduced class, ignoring the power of p.
FqElem evaluate_class(const Monomial& m, const ParamSet& ps);

// gamma(J) = [tilde_up class] * c'(J), an element of F.
FqElem gamma_of_j(const SubsetJ& J, const ParamSet& ps);

// ---- Kisin matrices ----------------------------------------------------

enum class W2 { id, w };  // the two elements of S_2

struct SStarData {
    std::vector<W2> s_star;   // s*_j
    std::vector<W2> w;        // w_j = s*_j s*_{j-1}
    std::vector<W2> w_prime;  // w'_j
};

SStarData s_star_w_wprime(const SubsetJ& J, const ParamSet& ps);

// A formal term c * p^a beta^b prod d^.. X^.. Y^.. Z^.. Z'^.. W^.. * v^k,
// where W_j stands for X_j - [beta^-2 d_j] (invertible off J_rho).
struct RTerm {
    i64 coeff = 1;
    i64 p_exp = 0;
    i64 beta_exp = 0;
    std::map<int, i64> d, x, y, z, zp, w;
    int v_exp = 0;
};

using REntry = std::vector<RTerm>;  // formal sum

struct KisinMatrices {
    // index j = 0..f-1; each matrix stored row-major [r*2+c]
    std::vector<std::array<REntry, 4>> a_prime;  // A'^{(f-1-j)}
    std::vector<std::array<REntry, 4>> a;        // A^{(f-1-j)} = D A'
    std::vector<std::array<REntry, 2>> d_diag;   // diagonal of D^{(f-1-j)}
    std::vector<std::pair<W2, W2>> pair;         // (w_j, w'_j)
};

KisinMatrices build_kisin_pairs(const std::vector<std::pair<W2, W2>>& pairs, const ParamSet& ps);
KisinMatrices build_kisin(const SubsetJ& J, const ParamSet& ps);

// Reduction modulo (maximal-ideal generators, p): F-coefficients on 1, v.
struct VLinear {
    FqElem c0, c1;  // value c0 + c1 v
    bool operator==(const VLinear&) const = default;
};

std::array<VLinear, 4> reduce_mod_m0(const std::array<REntry, 4>& mat, const ParamSet& ps);

// The three-case table for the reduced matrices, from the etale phi-module.
std::array<VLinear, 4> etale_phi_bar(W2 wj, W2 wpj, int j, const ParamSet& ps);

struct UpPrimeCheck {
    bool ok;
    std::string detail;
};

// Cross-checks the factor table against the (s*(1), s*(1)) Kisin entries
// mod v, using X_j Y_j = p and the unit structure of X_j - [beta^-2 d_j].
UpPrimeCheck verify_up_prime(const SubsetJ& J, const ParamSet& ps, int mutate_case = 0);

// Serialization of the module data (documentation output).
std::string lubin_tate_json(const ParamSet& ps);
std::string fontaine_laffaille_json(const ParamSet& ps);
std::string kisin_json(const SubsetJ& J, const ParamSet& ps);

}  // namespace leadterm
}  // namespace diamond

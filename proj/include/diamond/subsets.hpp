#pragma once

#include <cstdint>
#include <vector>

#include "diamond/fields.hpp"

namespace diamond {

// Subset of Z/fZ as an f-bit mask.
struct SubsetJ {
    std::uint32_t bits = 0;
    int f = 1;

    bool operator==(const SubsetJ&) const = default;
    bool contains(int j) const { return (bits >> mod(j)) & 1u; }
    int size() const { return __builtin_popcount(bits); }
    bool empty() const { return bits == 0; }
    bool full() const { return bits == mask(); }
    std::uint32_t mask() const { return (f >= 32) ? ~0u : ((1u << f) - 1u); }
    int mod(int j) const {
        int r = j % f;
        return r < 0 ? r + f : r;
    }
};

SubsetJ subset_of(std::uint32_t bits, int f);
SubsetJ subset_from_indices(const std::vector<int>& idx, int f);
std::vector<int> subset_indices(const SubsetJ& J);
std::vector<SubsetJ> all_subsets(int f);

SubsetJ shift(const SubsetJ& J, int k);  // J + k = { j + k mod f }
SubsetJ complement(const SubsetJ& J);
SubsetJ set_union(const SubsetJ& a, const SubsetJ& b);
SubsetJ set_intersect(const SubsetJ& a, const SubsetJ& b);
SubsetJ set_minus(const SubsetJ& a, const SubsetJ& b);
SubsetJ sym_diff(const SubsetJ& a, const SubsetJ& b);
bool is_subset(const SubsetJ& a, const SubsetJ& b);  // a included in b

struct DerivedSets {
    SubsetJ ss;        // J meet J_rho
    SubsetJ nss;       // J minus J_rho
    SubsetJ c;         // complement
    SubsetJ boundary;  // J minus (J-1)
    SubsetJ delta_ss;  // (J-1) meet J_rho
    SubsetJ j_delta;   // J symdiff (J-1)^ss
};

DerivedSets derived_ops(const SubsetJ& J, const SubsetJ& J_rho);

SubsetJ op_ss(const SubsetJ& J, const SubsetJ& J_rho);
SubsetJ op_nss(const SubsetJ& J, const SubsetJ& J_rho);
SubsetJ op_boundary(const SubsetJ& J);
SubsetJ op_delta_ss(const SubsetJ& J, const SubsetJ& J_rho);
SubsetJ op_j_delta(const SubsetJ& J, const SubsetJ& J_rho);

// Minimal i >= 0 with the i-fold delta_ss of J empty; needs J_rho proper.
int ell(const SubsetJ& J, const SubsetJ& J_rho);

// The chain J, delta_ss(J), ..., of length ell(J) (nonempty members only).
std::vector<SubsetJ> delta_ss_chain(const SubsetJ& J, const SubsetJ& J_rho);

// The unique J with J symdiff (J-1)^ss equal to all of Z/fZ (J_rho proper);
// found by scanning all subsets, uniqueness asserted.
SubsetJ find_j_star(const SubsetJ& J_rho);

// Length of the J_rho-run strictly after j: the k >= 0 with j+1..j+k all in
// J_rho and j+k+1 outside. Needs J_rho proper.
int run_length_after(int j, const SubsetJ& J_rho);

struct Interval {
    int start;   // j_i
    int len;     // k_i, interval is {j_i, ..., j_i + k_i}
    bool operator==(const Interval&) const = default;
};

// Decomposition of J_rho into pairwise non-adjacent intervals in Z/fZ,
// listed by ascending start. Empty input gives an empty list; full input
// has no such decomposition.
std::vector<Interval> interval_decomposition(const SubsetJ& J_rho);

struct Exponents {
    i64 a_ss;
    i64 a;
    i64 b;
};

// Closed forms: A^ss from the interval decomposition, A = A^ss + boundary
// count off J_rho, B from the delta_ss-chain sizes.
Exponents exponents(const SubsetJ& J, const SubsetJ& J_rho);

// Exponent of d_j in d(J) for each j outside J_rho (0 for j in J_rho).
std::vector<i64> d_exponent_vector(const SubsetJ& J, const SubsetJ& J_rho);

// Independent route: walk both delta_ss-chains, classify every per-factor
// case, and rebuild the sign/beta/d/p exponents from the counts.
struct ChainExponents {
    i64 a_ss;
    i64 a;
    i64 b;
    i64 p;                    // exponent of p after pairing
    std::vector<i64> d_exp;   // per j
};

ChainExponents exponents_via_chain(const SubsetJ& J, const SubsetJ& J_rho);

std::string to_string(const SubsetJ& J);

}  // namespace diamond

#pragma once

#include <map>

#include "diamond/leadterm.hpp"
#include "diamond/params.hpp"

namespace diamond {
namespace matrices {

// 2^f x 2^f matrix over F, rows and columns indexed by subset bitmasks.
struct ConstMatrix {
    int f = 1;
    std::vector<FqElem> e;  // row-major, size 4^f

    int n() const { return 1 << f; }
    FqElem& at(std::uint32_t row, std::uint32_t col) { return e[row * n() + col]; }
    const FqElem& at(std::uint32_t row, std::uint32_t col) const { return e[row * n() + col]; }
    bool operator==(const ConstMatrix&) const = default;
};

ConstMatrix zero_matrix(const ParamSet& ps);

// Support predicate of the extended constant matrices: (J-1)^ss = (J')^ss.
bool in_pattern(const SubsetJ& J, const SubsetJ& Jp, const SubsetJ& j_rho);

// nu_{J,J'} = beta^{|J^c|-|J|} prod_{(J-1)^nss} d / prod_{(J')^nss} d.
FqElem nu(const SubsetJ& J, const SubsetJ& Jp, const ParamSet& ps);

// nu(J): the row-ratio times the chain product of nu entries; equals
// beta^{B(J)} d(J) by construction, which the tests check independently.
FqElem nu_of_j(const SubsetJ& J, const ParamSet& ps);

// Extended matrix on the full pattern; the two conjugation-lemma conditions
// are asserted during the build.
ConstMatrix build_extended_nu(const ParamSet& ps);

bool conjugation_conditions_hold(const ConstMatrix& B, const ParamSet& ps, std::string* why = nullptr);

// Banded orientation: entry[row = J'][col = K] carries the extended value
// at (K, J') when (K-1)^ss included in J' included in K-1, else zero.
ConstMatrix build_banded(const ConstMatrix& extended, const ParamSet& ps);

struct InvariantData {
    FqElem at_empty;
    FqElem at_jstar;
    std::map<std::uint32_t, FqElem> at_j;  // keys: J not inside J_rho, J != J*
};

// The three determining families; well-definedness over the admissible row
// choices is asserted.
InvariantData extract_invariants(const ConstMatrix& B, const ParamSet& ps);

// Conjugation by the diagonal matrix with entries q[J].
ConstMatrix conjugate_diagonal(const ConstMatrix& B, const std::vector<FqElem>& q,
                               const ParamSet& ps);

struct Canonical {
    ConstMatrix mat;
    std::vector<FqElem> q;  // the diagonal used
};

// Normalizes B_{J, delta_ss(J)} = 1 for J != empty.
Canonical canonicalize(const ConstMatrix& B, const ParamSet& ps);

// Builds the canonical matrix carried by a set of invariants.
ConstMatrix reconstruct_from_invariants(const InvariantData& inv, const ParamSet& ps);

// gamma-side invariant families, computed without materializing a gamma
// matrix: xi at the empty set, the J*-pair via the reflection closed forms,
// and gamma(J) = [U_p class] * c'(J) elsewhere.
FqElem gamma_invariant_empty(const ParamSet& ps);
FqElem gamma_invariant_jstar(const ParamSet& ps);
FqElem gamma_invariant_at(const SubsetJ& J, const ParamSet& ps);

struct TheoremOptions {
    int mutate_d_index = -1;  // >= 0: multiply that d_j on the nu side only
};

struct TheoremReport {
    bool ok = true;
    std::vector<std::string> failures;
    std::vector<std::string> table;  // one line per invariant family member
};

// Full pipeline: extended nu, invariant extraction, gamma-side invariants,
// family comparison, canonical-form comparison, banded comparison.
TheoremReport verify_main_theorem(const ParamSet& ps, const TheoremOptions& opt = {});

std::string matrix_json(const ConstMatrix& B, const ParamSet& ps);

}  // namespace matrices
}  // namespace diamond

#pragma once

#include <string>
#include <vector>

#include "diamond/fields.hpp"
#include "diamond/subsets.hpp"

namespace diamond {

// Deterministic PRNG for reproducible sampling (splitmix64).
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    i64 below(i64 n);  // uniform in [0, n)
};

enum class Mode { strict, relaxed };

// A complete instance: every constant in the library is evaluated against
// one of these. Immutable after construction.
struct ParamSet {
    i64 p;
    int f;
    int e;                  // degree of the coefficient field F = F_{p^e}
    std::vector<i64> r;     // weights r_j, length f
    SubsetJ j_rho;          // d_j = 0 exactly on j_rho
    FqField F;              // the coefficient field
    FqElem beta;
    std::vector<FqElem> d;  // length f
    FqElem xi;              // beta^f

    i64 q() const;  // p^f

    static ParamSet make(i64 p, int f, int e, std::vector<i64> r, SubsetJ j_rho,
                         FqElem beta, std::vector<FqElem> d);
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate(const ParamSet& ps, Mode mode);

// Genericity window for r_j: [max{12, 2f+1}, p - max{15, 2f+3}].
i64 strict_lo(int f);
i64 strict_hi(i64 p, int f);

// Deterministic strict-generic sample; same seed, same ParamSet.
ParamSet sample(i64 p, int f, SubsetJ j_rho, std::uint64_t seed, int e = 0);

// Relaxed sample for small-q operator tests: only 0 < r_j < p-1.
ParamSet sample_relaxed(i64 p, int f, SubsetJ j_rho, std::uint64_t seed, int e = 0);

// Stable content hash, used to key report records.
std::string params_hash(const ParamSet& ps);

std::string to_json(const ParamSet& ps);
ParamSet params_from_json(const std::string& text);

}  // namespace diamond

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace diamond {

using i64 = std::int64_t;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Residue arithmetic in F_p, values kept in [0, p).
namespace fp {

i64 reduce(i64 a, i64 p);
i64 add(i64 a, i64 b, i64 p);
i64 sub(i64 a, i64 b, i64 p);
i64 mul(i64 a, i64 b, i64 p);
i64 pow(i64 a, i64 n, i64 p);  // negative n via inverse
i64 inv(i64 a, i64 p);
i64 sign_pow(i64 exponent, i64 p);  // (-1)^exponent as a residue

// n! mod p, requires 0 <= n <= p-1.
i64 factorial(i64 n, i64 p);

// True when ((p-1-r)!)^{-1} == (-1)^{r+1} r! holds for every r in [0, p).
bool factorial_reflection_holds(i64 p);

bool is_prime(i64 n);

}  // namespace fp

// Dense polynomial over F_p, coefficients low degree first.
using Poly = std::vector<i64>;

// Deterministic monic irreducible of degree e over F_p: the
// lexicographically smallest one, coefficients compared low degree first.
Poly canonical_modulus(i64 p, int e);
bool poly_is_irreducible(const Poly& m, i64 p);

// Element of F_{p^e}: coefficient vector of length e w.r.t. the canonical
// modulus, entries reduced to [0, p).
struct FqElem {
    std::vector<i64> c;
    bool operator==(const FqElem&) const = default;
};

class FqField {
public:
    FqField(i64 p, int e);

    i64 p() const { return p_; }
    int e() const { return e_; }
    i64 q() const { return q_; }  // p^e
    const Poly& modulus() const { return mod_; }

    FqElem zero() const;
    FqElem one() const;
    FqElem from_scalar(i64 a) const;            // image of F_p
    FqElem from_coeffs(std::vector<i64> c) const;
    bool is_zero(const FqElem& x) const;

    FqElem add(const FqElem& a, const FqElem& b) const;
    FqElem sub(const FqElem& a, const FqElem& b) const;
    FqElem neg(const FqElem& a) const;
    FqElem mul(const FqElem& a, const FqElem& b) const;
    FqElem inv(const FqElem& a) const;
    FqElem pow(const FqElem& a, i64 n) const;  // exponent reduced mod q-1
    FqElem frobenius(const FqElem& a, i64 j) const;  // a^(p^j)

    // Bijection with [0, q): index = sum c_i p^i.
    i64 to_index(const FqElem& x) const;
    FqElem from_index(i64 idx) const;

    // An element of multiplicative order q-1 (smallest index).
    FqElem generator() const;

    std::string to_string(const FqElem& x) const;

private:
    i64 p_;
    int e_;
    i64 q_;
    Poly mod_;
};

}  // namespace diamond

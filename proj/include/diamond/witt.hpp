#pragma once

#include "diamond/fields.hpp"

namespace diamond {

// Element of W(F_q)/p^N realized as (Z/p^N)[x]/(m~), m~ the coefficient-wise
// minimal monic lift of the canonical modulus of F_q. Coefficients reduced
// to [0, p^N), low degree first, length f.
struct WittElem {
    std::vector<i64> c;
    bool operator==(const WittElem&) const = default;
};

struct Valuation {
    int v;              // in [0, N]
    bool exhausted;     // v == N: the element is 0 at working precision
};

class WittRing {
public:
    WittRing(i64 p, int f, int N);

    i64 p() const { return p_; }
    int f() const { return f_; }
    int precision() const { return N_; }
    i64 q() const { return field_.q(); }
    i64 p_pow_N() const { return pN_; }
    const FqField& residue_field() const { return field_; }

    WittElem zero() const;
    WittElem one() const;
    WittElem from_int(i64 a) const;
    WittElem p_power(int v) const;
    bool is_zero(const WittElem& a) const;

    WittElem add(const WittElem& a, const WittElem& b) const;
    WittElem sub(const WittElem& a, const WittElem& b) const;
    WittElem neg(const WittElem& a) const;
    WittElem mul(const WittElem& a, const WittElem& b) const;
    WittElem mul_int(const WittElem& a, i64 k) const;

    // The unique lift of lam fixed by x -> x^q, i.e. the Teichmuller
    // representative; multiplicative in lam.
    WittElem teichmuller(const FqElem& lam) const;

    Valuation valuation(const WittElem& a) const;
    // a / p^v, requires p^v | a exactly.
    WittElem divide_p_power(const WittElem& a, int v) const;
    FqElem reduce_mod_p(const WittElem& a) const;
    // Reduction mod p of a/p^{val(a)}; error on precision-exhausted input.
    FqElem leading_term(const WittElem& a) const;

    std::string to_string(const WittElem& a) const;
    // Debug view: each coefficient as its base-p digit array, low first.
    std::string dump_digits(const WittElem& a) const;

private:
    i64 p_;
    int f_;
    int N_;
    i64 pN_;
    FqField field_;
    std::vector<i64> mod_;  // monic lift, length f+1

    i64 red(i64 a) const;
    i64 mulm(i64 a, i64 b) const;
};

}  // namespace diamond

#include "diamond/witt.hpp"

namespace diamond {

WittRing::WittRing(i64 p, int f, int N) : p_(p), f_(f), N_(N), field_(p, f) {
    if (N < 1) throw error("WittRing: precision must be >= 1");
    pN_ = 1;
    for (int i = 0; i < N; ++i) {
        if (pN_ > (i64(1) << 62) / p) throw error("WittRing: p^N too large for 64-bit storage");
        pN_ *= p;
    }
    const Poly& m = field_.modulus();
    mod_.assign(m.begin(), m.end());  // entries already in [0, p): minimal lift
}

i64 WittRing::red(i64 a) const {
    i64 r = a % pN_;
    return r < 0 ? r + pN_ : r;
}

i64 WittRing::mulm(i64 a, i64 b) const {
    return static_cast<i64>(static_cast<__int128>(a) * b % pN_);
}

WittElem WittRing::zero() const { return WittElem{std::vector<i64>(f_, 0)}; }

WittElem WittRing::one() const { return from_int(1); }

WittElem WittRing::from_int(i64 a) const {
    WittElem r = zero();
    r.c[0] = red(a);
    return r;
}

WittElem WittRing::p_power(int v) const {
    if (v < 0 || v > N_) throw error("WittRing::p_power: exponent out of range");
    i64 x = 1;
    for (int i = 0; i < v; ++i) x *= p_;
    return from_int(v == N_ ? 0 : x);
}

bool WittRing::is_zero(const WittElem& a) const {
    for (i64 v : a.c)
        if (v != 0) return false;
    return true;
}

WittElem WittRing::add(const WittElem& a, const WittElem& b) const {
    WittElem r = zero();
    for (int i = 0; i < f_; ++i) r.c[i] = red(a.c[i] + b.c[i]);
    return r;
}

WittElem WittRing::sub(const WittElem& a, const WittElem& b) const {
    WittElem r = zero();
    for (int i = 0; i < f_; ++i) r.c[i] = red(a.c[i] - b.c[i]);
    return r;
}

WittElem WittRing::neg(const WittElem& a) const { return sub(zero(), a); }

WittElem WittRing::mul(const WittElem& a, const WittElem& b) const {
    std::vector<i64> prod(2 * f_ - 1, 0);
    for (int i = 0; i < f_; ++i) {
        if (a.c[i] == 0) continue;
        for (int j = 0; j < f_; ++j) {
            if (b.c[j] == 0) continue;
            prod[i + j] = red(prod[i + j] + mulm(a.c[i], b.c[j]));
        }
    }
    // reduce by the monic lift
    for (int d = 2 * f_ - 2; d >= f_; --d) {
        i64 c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (int i = 0; i < f_; ++i)
            prod[d - f_ + i] = red(prod[d - f_ + i] - mulm(c, mod_[i]));
    }
    WittElem r = zero();
    for (int i = 0; i < f_; ++i) r.c[i] = prod[i];
    return r;
}

WittElem WittRing::mul_int(const WittElem& a, i64 k) const {
    WittElem r = zero();
    i64 kk = red(k);
    for (int i = 0; i < f_; ++i) r.c[i] = mulm(a.c[i], kk);
    return r;
}

WittElem WittRing::teichmuller(const FqElem& lam) const {
    WittElem x = zero();
    for (int i = 0; i < f_; ++i) x.c[i] = lam.c[i];
    for (int it = 0; it <= N_; ++it) {
        // x <- x^q
        WittElem y = one();
        WittElem base = x;
        i64 n = field_.q();
        while (n > 0) {
            if (n & 1) y = mul(y, base);
            base = mul(base, base);
            n >>= 1;
        }
        if (y == x) break;
        x = y;
    }
    return x;
}

Valuation WittRing::valuation(const WittElem& a) const {
    int v = N_;
    for (i64 c : a.c) {
        if (c == 0) continue;
        int vc = 0;
        i64 x = c;
        while (x % p_ == 0) {
            x /= p_;
            ++vc;
        }
        v = std::min(v, vc);
    }
    return Valuation{v, v == N_};
}

WittElem WittRing::divide_p_power(const WittElem& a, int v) const {
    i64 pv = 1;
    for (int i = 0; i < v; ++i) pv *= p_;
    WittElem r = zero();
    for (int i = 0; i < f_; ++i) {
        if (a.c[i] % pv != 0) throw error("WittRing::divide_p_power: not divisible");
        r.c[i] = a.c[i] / pv;
    }
    return r;
}

FqElem WittRing::reduce_mod_p(const WittElem& a) const {
    std::vector<i64> c(f_);
    for (int i = 0; i < f_; ++i) c[i] = a.c[i] % p_;
    return FqElem{std::move(c)};
}

FqElem WittRing::leading_term(const WittElem& a) const {
    Valuation v = valuation(a);
    if (v.exhausted) throw error("WittRing::leading_term: precision exhausted");
    return reduce_mod_p(divide_p_power(a, v.v));
}

std::string WittRing::to_string(const WittElem& a) const {
    std::string s = "[";
    for (int i = 0; i < f_; ++i) {
        if (i) s += ",";
        s += std::to_string(a.c[i]);
    }
    return s + "]";
}

std::string WittRing::dump_digits(const WittElem& a) const {
    std::string s = "[";
    for (int i = 0; i < f_; ++i) {
        if (i) s += ", ";
        s += "[";
        i64 x = a.c[i];
        for (int k = 0; k < N_; ++k) {
            if (k) s += ",";
            s += std::to_string(x % p_);
            x /= p_;
        }
        s += "]";
    }
    return s + "]";
}

}  // namespace diamond

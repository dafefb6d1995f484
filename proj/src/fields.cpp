#include "diamond/fields.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace diamond {

namespace fp {

i64 reduce(i64 a, i64 p) {
    i64 r = a % p;
    return r < 0 ? r + p : r;
}

i64 add(i64 a, i64 b, i64 p) { return reduce(a + b, p); }
i64 sub(i64 a, i64 b, i64 p) { return reduce(a - b, p); }

i64 mul(i64 a, i64 b, i64 p) {
    return static_cast<i64>(static_cast<__int128>(reduce(a, p)) * reduce(b, p) % p);
}

i64 inv(i64 a, i64 p) {
    a = reduce(a, p);
    if (a == 0) throw error("fp::inv: division by zero");
    // extended Euclid
    i64 b = p, x = 1, u = 0;
    while (b != 0) {
        i64 q = a / b;
        a -= q * b;
        std::swap(a, b);
        x -= q * u;
        std::swap(x, u);
    }
    if (a != 1) throw error("fp::inv: modulus not coprime");
    return reduce(x, p);
}

i64 pow(i64 a, i64 n, i64 p) {
    a = reduce(a, p);
    if (n < 0) {
        a = inv(a, p);
        n = -n;
    }
    i64 r = 1;
    while (n > 0) {
        if (n & 1) r = mul(r, a, p);
        a = mul(a, a, p);
        n >>= 1;
    }
    return r;
}

i64 sign_pow(i64 exponent, i64 p) {
    i64 m = reduce(exponent, 2);
    return m == 0 ? 1 : p - 1;
}

i64 factorial(i64 n, i64 p) {
    if (n < 0 || n >= p) throw error("fp::factorial: argument out of [0, p)");
    i64 r = 1;
    for (i64 k = 2; k <= n; ++k) r = mul(r, k, p);
    return r;
}

bool factorial_reflection_holds(i64 p) {
    for (i64 r = 0; r < p; ++r) {
        i64 lhs = inv(factorial(p - 1 - r, p), p);
        i64 rhs = mul(sign_pow(r + 1, p), factorial(r, p), p);
        if (lhs != rhs) return false;
    }
    return true;
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace fp

namespace {

Poly poly_trim(Poly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

Poly poly_mod(Poly a, const Poly& m, i64 p) {
    a = poly_trim(std::move(a));
    const int dm = static_cast<int>(m.size()) - 1;
    i64 lead_inv = fp::inv(m[dm], p);
    while (static_cast<int>(a.size()) - 1 >= dm) {
        int da = static_cast<int>(a.size()) - 1;
        i64 c = fp::mul(a[da], lead_inv, p);
        for (int i = 0; i <= dm; ++i)
            a[da - dm + i] = fp::sub(a[da - dm + i], fp::mul(c, m[i], p), p);
        a = poly_trim(std::move(a));
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, i64 p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = fp::add(c[i + j], fp::mul(a[i], b[j], p), p);
    }
    return poly_mod(std::move(c), m, p);
}

Poly poly_powmod(Poly base, i64 n, const Poly& m, i64 p) {
    Poly r = {1};
    base = poly_mod(std::move(base), m, p);
    while (n > 0) {
        if (n & 1) r = poly_mulmod(r, base, m, p);
        base = poly_mulmod(base, base, m, p);
        n >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, i64 p) {
    a = poly_trim(std::move(a));
    b = poly_trim(std::move(b));
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

}  // namespace

bool poly_is_irreducible(const Poly& m, i64 p) {
    const int e = static_cast<int>(m.size()) - 1;
    if (e <= 0) return false;
    if (e == 1) return true;
    // A nontrivial factor would have degree i <= e/2 and divide x^(p^i) - x.
    for (int i = 1; i <= e / 2; ++i) {
        i64 pe = 1;
        for (int k = 0; k < i; ++k) pe *= p;
        Poly diff = poly_powmod(Poly{0, 1}, pe, m, p);
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = fp::sub(diff[1], 1, p);
        Poly g = poly_gcd(m, diff, p);
        if (static_cast<int>(poly_trim(g).size()) - 1 != 0) return false;
    }
    return true;
}

Poly canonical_modulus(i64 p, int e) {
    if (e < 1) throw error("canonical_modulus: e must be >= 1");
    if (!fp::is_prime(p)) throw error("canonical_modulus: p must be prime");
    if (e == 1) return {0, 1};  // x

    static std::mutex mu;
    static std::map<std::pair<i64, int>, Poly> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({p, e});
        if (it != cache.end()) return it->second;
    }

    auto has_root = [&](const Poly& m) {
        for (i64 x = 0; x < p; ++x) {
            i64 v = 0;
            for (int i = static_cast<int>(m.size()) - 1; i >= 0; --i) v = (v * x + m[i]) % p;
            if (v == 0) return true;
        }
        return false;
    };

    // Enumerate monic degree-e polynomials in lexicographic order on
    // (c_0, c_1, ..., c_{e-1}), c_0 most significant.
    std::vector<i64> c(e, 0);
    while (true) {
        if (c[0] != 0) {  // zero constant term means x divides
            Poly m(c.begin(), c.end());
            m.push_back(1);
            if (!has_root(m) && poly_is_irreducible(m, p)) {
                std::lock_guard<std::mutex> lock(mu);
                cache[{p, e}] = m;
                return m;
            }
        }
        int i = e - 1;
        while (i >= 0 && c[i] == p - 1) c[i--] = 0;
        if (i < 0) throw error("canonical_modulus: exhausted search");
        ++c[i];
    }
}

FqField::FqField(i64 p, int e) : p_(p), e_(e) {
    if (!fp::is_prime(p)) throw error("FqField: p must be prime");
    if (e < 1) throw error("FqField: e must be >= 1");
    q_ = 1;
    for (int i = 0; i < e; ++i) {
        if (q_ > (i64(1) << 62) / p) throw error("FqField: p^e too large");
        q_ *= p;
    }
    mod_ = canonical_modulus(p, e);
}

FqElem FqField::zero() const { return FqElem{std::vector<i64>(e_, 0)}; }

FqElem FqField::one() const { return from_scalar(1); }

FqElem FqField::from_scalar(i64 a) const {
    std::vector<i64> c(e_, 0);
    c[0] = fp::reduce(a, p_);
    return FqElem{std::move(c)};
}

FqElem FqField::from_coeffs(std::vector<i64> c) const {
    Poly r = poly_mod(Poly(c.begin(), c.end()), mod_, p_);
    r.resize(e_, 0);
    for (auto& x : r) x = fp::reduce(x, p_);
    return FqElem{std::move(r)};
}

bool FqField::is_zero(const FqElem& x) const {
    return std::all_of(x.c.begin(), x.c.end(), [](i64 v) { return v == 0; });
}

FqElem FqField::add(const FqElem& a, const FqElem& b) const {
    FqElem r = zero();
    for (int i = 0; i < e_; ++i) r.c[i] = fp::add(a.c[i], b.c[i], p_);
    return r;
}

FqElem FqField::sub(const FqElem& a, const FqElem& b) const {
    FqElem r = zero();
    for (int i = 0; i < e_; ++i) r.c[i] = fp::sub(a.c[i], b.c[i], p_);
    return r;
}

FqElem FqField::neg(const FqElem& a) const { return sub(zero(), a); }

FqElem FqField::mul(const FqElem& a, const FqElem& b) const {
    Poly r = poly_mulmod(Poly(a.c.begin(), a.c.end()), Poly(b.c.begin(), b.c.end()), mod_, p_);
    r.resize(e_, 0);
    return FqElem{std::move(r)};
}

FqElem FqField::inv(const FqElem& a) const {
    if (is_zero(a)) throw error("FqField::inv: division by zero");
    return pow(a, q_ - 2);
}

FqElem FqField::pow(const FqElem& a, i64 n) const {
    if (is_zero(a)) {
        if (n == 0) return one();
        if (n < 0) throw error("FqField::pow: zero to negative power");
        return zero();
    }
    // Exponents act through the multiplicative order q-1.
    n = fp::reduce(n, q_ - 1);
    FqElem r = one();
    FqElem base = a;
    while (n > 0) {
        if (n & 1) r = mul(r, base);
        base = mul(base, base);
        n >>= 1;
    }
    return r;
}

FqElem FqField::frobenius(const FqElem& a, i64 j) const {
    j = fp::reduce(j, e_);
    i64 pe = 1;
    for (i64 k = 0; k < j; ++k) pe *= p_;
    if (is_zero(a)) return a;
    return pow(a, pe);
}

i64 FqField::to_index(const FqElem& x) const {
    i64 idx = 0, w = 1;
    for (int i = 0; i < e_; ++i) {
        idx += x.c[i] * w;
        w *= p_;
    }
    return idx;
}

FqElem FqField::from_index(i64 idx) const {
    if (idx < 0 || idx >= q_) throw error("FqField::from_index: out of range");
    std::vector<i64> c(e_, 0);
    for (int i = 0; i < e_; ++i) {
        c[i] = idx % p_;
        idx /= p_;
    }
    return FqElem{std::move(c)};
}

FqElem FqField::generator() const {
    std::vector<i64> prime_factors;
    i64 n = q_ - 1;
    for (i64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            prime_factors.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) prime_factors.push_back(n);
    for (i64 idx = 1; idx < q_; ++idx) {
        FqElem g = from_index(idx);
        bool ok = true;
        for (i64 ell : prime_factors) {
            if (pow(g, (q_ - 1) / ell) == one()) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw error("FqField::generator: not found");
}

std::string FqField::to_string(const FqElem& x) const {
    std::string s = "[";
    for (int i = 0; i < e_; ++i) {
        if (i) s += ",";
        s += std::to_string(x.c[i]);
    }
    return s + "]";
}

}  // namespace diamond

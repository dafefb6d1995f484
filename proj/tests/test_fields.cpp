#include <doctest.h>

#include "diamond/fields.hpp"
#include "diamond/params.hpp"

using namespace diamond;

TEST_CASE("prime field basics") {
    CHECK(fp::inv(3, 5) == 2);
    CHECK(fp::inv(1, 7) == 1);
    CHECK_THROWS_AS(fp::inv(0, 5), error);
    CHECK(fp::factorial(0, 5) == 1);
    CHECK(fp::factorial(4, 5) == 4);  // 24 mod 5
    CHECK_THROWS_AS(fp::factorial(5, 5), error);
    CHECK(fp::pow(2, -1, 5) == 3);
    CHECK(fp::sign_pow(3, 5) == 4);
    CHECK(fp::sign_pow(0, 5) == 1);
}

TEST_CASE("factorial reflection identity") {
    // ((p-1-r)!)^{-1} = (-1)^{r+1} r! for all r, sampled primes
    for (i64 p : {5, 7, 29, 31, 37}) CHECK(fp::factorial_reflection_holds(p));
    // spot value at p=5, r=2: ((2)!)^{-1} = 3 and (-1)^3 2! = 3
    CHECK(fp::inv(fp::factorial(5 - 1 - 2, 5), 5) == 3);
    CHECK(fp::mul(fp::sign_pow(3, 5), fp::factorial(2, 5), 5) == 3);
}

TEST_CASE("canonical modulus") {
    CHECK(canonical_modulus(5, 1) == Poly{0, 1});
    CHECK(canonical_modulus(2, 2) == Poly{1, 1, 1});

    // oracle: exhaustive scan over all monic quadratics mod 29 in the same order
    Poly best;
    for (i64 c0 = 0; c0 < 29 && best.empty(); ++c0)
        for (i64 c1 = 0; c1 < 29 && best.empty(); ++c1) {
            bool has_root = false;
            for (i64 x = 0; x < 29; ++x)
                if ((x * x + c1 * x + c0) % 29 == 0) has_root = true;
            if (!has_root) best = Poly{c0, c1, 1};
        }
    CHECK(canonical_modulus(29, 2) == best);
    CHECK(poly_is_irreducible(canonical_modulus(29, 2), 29));
}

TEST_CASE("field axioms on random triples") {
    for (auto [p, e] : std::vector<std::pair<i64, int>>{{5, 2}, {29, 2}, {3, 3}}) {
        FqField F(p, e);
        Rng rng(42 + p + e);
        for (int t = 0; t < 1000; ++t) {
            FqElem a = F.from_index(rng.below(F.q()));
            FqElem b = F.from_index(rng.below(F.q()));
            FqElem c = F.from_index(rng.below(F.q()));
            REQUIRE(F.add(a, b) == F.add(b, a));
            REQUIRE(F.mul(a, b) == F.mul(b, a));
            REQUIRE(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
            REQUIRE(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
            if (!F.is_zero(a)) {
                REQUIRE(F.mul(a, F.inv(a)) == F.one());
                REQUIRE(F.pow(a, F.q() - 1) == F.one());
            }
        }
    }
}

TEST_CASE("frobenius") {
    FqField F(2, 2);
    FqElem g = F.generator();
    CHECK(F.frobenius(g, 0) == g);
    CHECK(F.frobenius(g, 1) == F.mul(g, g));

    FqField K(5, 3);
    Rng rng(7);
    for (int t = 0; t < 200; ++t) {
        FqElem a = K.from_index(rng.below(K.q()));
        FqElem b = K.from_index(rng.below(K.q()));
        FqElem fa = K.frobenius(a, 1);
        CHECK(K.frobenius(a, K.e()) == a);
        CHECK(K.frobenius(K.mul(a, b), 1) == K.mul(fa, K.frobenius(b, 1)));
        CHECK(K.frobenius(K.add(a, b), 1) == K.add(fa, K.frobenius(b, 1)));
    }
}

TEST_CASE("generator has full order") {
    for (auto [p, e] : std::vector<std::pair<i64, int>>{{5, 1}, {5, 2}, {29, 2}}) {
        FqField F(p, e);
        FqElem g = F.generator();
        i64 n = F.q() - 1;
        FqElem cur = F.one();
        for (i64 k = 1; k < n; ++k) {
            cur = F.mul(cur, g);
            REQUIRE_FALSE(cur == F.one());
        }
        CHECK(F.mul(cur, g) == F.one());
    }
}

#include <doctest.h>

#include "diamond/subsets.hpp"

using namespace diamond;

namespace {

SubsetJ S(std::initializer_list<int> idx, int f) { return subset_from_indices(idx, f); }

}  // namespace

TEST_CASE("derived operators, worked example") {
    int f = 2;
    SubsetJ j_rho = S({0}, f), J = S({1}, f);
    DerivedSets d = derived_ops(J, j_rho);
    CHECK(d.ss == S({}, f));
    CHECK(d.nss == S({1}, f));
    CHECK(d.boundary == S({1}, f));
    CHECK(d.delta_ss == S({0}, f));
    CHECK(d.j_delta == S({0, 1}, f));
}

TEST_CASE("derived operators, degenerate inputs") {
    int f = 3;
    SubsetJ empty = S({}, f), full = S({0, 1, 2}, f);
    DerivedSets d = derived_ops(empty, S({0}, f));
    CHECK(d.ss.empty());
    CHECK(d.nss.empty());
    CHECK(d.boundary.empty());
    CHECK(d.delta_ss.empty());
    CHECK(d.j_delta.empty());

    DerivedSets e = derived_ops(full, full);
    CHECK(e.delta_ss == full);
    CHECK(e.boundary.empty());
}

TEST_CASE("ell") {
    int f = 2;
    SubsetJ j_rho = S({0}, f);
    CHECK(ell(S({}, f), j_rho) == 0);
    CHECK(ell(S({0, 1}, f), j_rho) == 2);
    CHECK_THROWS_AS(ell(S({0}, 1), S({0}, 1)), error);
    for (int ff = 1; ff <= 4; ++ff)
        for (const SubsetJ& jr : all_subsets(ff)) {
            if (jr.full()) continue;
            for (const SubsetJ& J : all_subsets(ff)) REQUIRE(ell(J, jr) <= ff + 1);
        }
}

TEST_CASE("delta_ss chain facts") {
    for (int f = 1; f <= 4; ++f)
        for (const SubsetJ& jr : all_subsets(f)) {
            if (jr.full()) continue;
            for (const SubsetJ& J : all_subsets(f)) {
                std::vector<SubsetJ> ch = delta_ss_chain(J, jr);
                SubsetJ cur = J;
                for (const SubsetJ& c : ch) {
                    REQUIRE(c == cur);
                    REQUIRE(is_subset(op_delta_ss(cur, jr), shift(cur, -1)));
                    cur = op_delta_ss(cur, jr);
                }
                REQUIRE(cur.empty());
            }
        }
}

TEST_CASE("J* brute force, both directions") {
    CHECK(find_j_star(S({0}, 2)) == S({1}, 2));
    CHECK(find_j_star(S({0, 1}, 3)) == S({0, 2}, 3));
    CHECK(find_j_star(S({}, 2)) == S({0, 1}, 2));
    CHECK_THROWS_AS(find_j_star(S({0, 1}, 2)), error);
    for (int f = 1; f <= 5; ++f)
        for (const SubsetJ& jr : all_subsets(f)) {
            if (jr.full()) continue;
            SubsetJ js = find_j_star(jr);
            for (const SubsetJ& J : all_subsets(f))
                REQUIRE((op_j_delta(J, jr).full()) == (J == js));
        }
}

TEST_CASE("interval decomposition") {
    CHECK(interval_decomposition(S({}, 3)).empty());
    CHECK_THROWS_AS(interval_decomposition(S({0, 1, 2}, 3)), error);

    // wraparound: {0,1,3} in Z/4Z is the single interval starting at 3
    auto iv = interval_decomposition(S({0, 1, 3}, 4));
    REQUIRE(iv.size() == 1);
    CHECK(iv[0] == Interval{3, 2});

    auto iv2 = interval_decomposition(S({2, 0}, 3));
    REQUIRE(iv2.size() == 1);
    CHECK(iv2[0] == Interval{2, 1});

    auto iv3 = interval_decomposition(S({0, 2}, 4));
    REQUIRE(iv3.size() == 2);
    CHECK(iv3[0] == Interval{0, 0});
    CHECK(iv3[1] == Interval{2, 0});

    // intervals cover J_rho, are disjoint and non-adjacent
    for (int f = 1; f <= 5; ++f)
        for (const SubsetJ& jr : all_subsets(f)) {
            if (jr.full()) continue;
            SubsetJ cover = S({}, f);
            for (const Interval& i : interval_decomposition(jr)) {
                for (int k = 0; k <= i.len; ++k) {
                    REQUIRE(jr.contains(i.start + k));
                    REQUIRE_FALSE(cover.contains(i.start + k));
                    cover.bits |= 1u << cover.mod(i.start + k);
                }
                REQUIRE_FALSE(jr.contains(i.start - 1));
                REQUIRE_FALSE(jr.contains(i.start + i.len + 1));
            }
            REQUIRE(cover == jr);
        }
}

TEST_CASE("exponents, worked examples") {
    int f = 2;
    SubsetJ j_rho = S({0}, f);
    Exponents e1 = exponents(S({1}, f), j_rho);
    CHECK(e1.a_ss == 1);
    CHECK(e1.a == 2);
    CHECK(e1.b == 0);
    Exponents e2 = exponents(S({0, 1}, f), j_rho);
    CHECK(e2.a_ss == 0);
    CHECK(e2.a == 0);
    CHECK(e2.b == -2);
    Exponents e0 = exponents(S({}, f), j_rho);
    CHECK(e0.a_ss == 0);
    CHECK(e0.a == 0);
    CHECK(e0.b == 0);
}

TEST_CASE("d exponents, worked examples") {
    int f = 2;
    SubsetJ j_rho = S({0}, f);
    CHECK(d_exponent_vector(S({1}, f), j_rho) == std::vector<i64>{0, 0});
    CHECK(d_exponent_vector(S({0, 1}, f), j_rho) == std::vector<i64>{0, 0});
    // J = {0}: its chain and the J^ss-chain coincide, so the d-part cancels
    CHECK(d_exponent_vector(S({0}, f), j_rho) == std::vector<i64>{0, 0});
    // a case with genuinely nonzero exponents: f=3, J_rho={1}, J={0}
    CHECK(d_exponent_vector(S({0}, 3), S({0, 1}, 3)) == std::vector<i64>{0, 0, 0});
    CHECK(d_exponent_vector(S({0}, 3), S({1}, 3)) == std::vector<i64>{-1, 0, 1});
    // J inside J_rho: trivial d-part
    CHECK(d_exponent_vector(S({0}, 3), S({0, 1}, 3)) == std::vector<i64>{0, 0, 0});
}

TEST_CASE("closed forms agree with the chain walk") {
    for (int f = 1; f <= 4; ++f)
        for (const SubsetJ& jr : all_subsets(f)) {
            if (jr.full()) continue;
            for (const SubsetJ& J : all_subsets(f)) {
                Exponents ex = exponents(J, jr);
                ChainExponents ce = exponents_via_chain(J, jr);
                REQUIRE(ce.a_ss == ex.a_ss);
                REQUIRE(ce.a == ex.a);
                REQUIRE(ce.b == ex.b);
                REQUIRE(ce.d_exp == d_exponent_vector(J, jr));
                REQUIRE(ce.p >= 0);
            }
        }
}

TEST_CASE("run length") {
    SubsetJ jr = S({0, 1, 3}, 4);
    CHECK(run_length_after(3, jr) == 2);  // 0, 1 follow
    CHECK(run_length_after(1, jr) == 0);  // 2 is outside
    CHECK(run_length_after(2, jr) == 3);  // 3, 0, 1 follow
}

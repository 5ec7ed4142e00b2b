#include "doctest.h"
#include "gwp1/curve.hpp"
#include "gwp1/functionals.hpp"

using namespace gwp1;

TEST_CASE("basis forms are odd under z -> 1/z") {
    for (int k = 0; k <= 6; ++k)
        for (int a = 0; a < 2; ++a) CHECK(is_odd(xi(a, k)));
}

TEST_CASE("odd forms decompose back onto the basis") {
    for (int k = 0; k <= 5; ++k)
        for (int a = 0; a < 2; ++a) {
            auto d = decompose_odd_form(xi(a, k));
            REQUIRE(d.size() == 1);
            CHECK(d.begin()->first == XiIndex{k, a});
            CHECK(d.begin()->second == 1);
        }
    RatForm mix = frac(3, 7) * xi(0, 2) - 5 * xi(1, 4) + xi(1, 0);
    CHECK(reconstruct(decompose_odd_form(mix)) == mix);
}

TEST_CASE("x-action on the basis matches multiplication by x") {
    RatForm x = RatForm::function(x_function());
    for (int k = 0; k <= 5; ++k)
        for (int a = 0; a < 2; ++a) CHECK(reconstruct(x_action({k, a})) == x * xi(a, k));
}

TEST_CASE("x-action examples") {
    auto d = x_action({0, 0});
    CHECK(d.size() == 1);
    CHECK(d.at({0, 1}) == 2);
    d = x_action({3, 1});
    CHECK(d.at({3, 0}) == 2);
    CHECK(d.at({2, 1}) == 4);
}

TEST_CASE("lowering raises the basis index") {
    for (int k = 0; k <= 5; ++k)
        for (int a = 0; a < 2; ++a) CHECK(lower(xi(a, k)) == xi(a, k + 1));
}

TEST_CASE("local expansions of the basis at the branch points") {
    for (int a : {1, -1})
        for (int k = 0; k <= 3; ++k)
            for (int al = 0; al < 2; ++al) {
                auto s = xi_series({k, al}, a, 4);
                CHECK(s.valuation() == -(2 * k + 2));
                CHECK(s[-(2 * k + 2)] == xi_leading({k, al}, a));
            }
}

TEST_CASE("I^1 by residue agrees with the closed table") {
    for (int b = 0; b <= 10; ++b)
        for (int k = 0; k <= 4; ++k)
            for (int a = 0; a < 2; ++a) CHECK(I1(b, xi(a, k)) == I_basis(1, b, XiIndex{k, a}));
}

TEST_CASE("negative basis shifts vanish") {
    CHECK(I_basis(0, 1, XiIndex{3, 0}) == 0);
    CHECK(I_basis(1, -1, XiIndex{0, 1}) == 0);
    CHECK_THROWS_AS(I_basis(2, 0, XiIndex{0, 0}), DomainError);
    CHECK_THROWS_AS(I_basis(0, 0, XiIndex{0, 2}), DomainError);
}

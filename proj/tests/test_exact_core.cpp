#include <random>

#include "doctest.h"
#include "gwp1/poly.hpp"
#include "gwp1/series.hpp"

using namespace gwp1;

TEST_CASE("rational printing round-trips") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> num(-100000, 100000), den(1, 100000);
    for (int i = 0; i < 500; ++i) {
        Rational q = frac(num(rng), den(rng));
        CHECK(parse_rational(to_string(q)) == q);
    }
    Rational big = factorial(40) / factorial(17);
    CHECK(parse_rational(to_string(big)) == big);
    CHECK(to_string(frac(6, -4)) == "-3/2");
    CHECK(to_string(Rational(5)) == "5");
}

TEST_CASE("malformed rationals are rejected") {
    CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
    CHECK_THROWS_AS(parse_rational("abc"), DomainError);
    CHECK_THROWS_AS(parse_rational(""), DomainError);
}

TEST_CASE("combinatorial helpers") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(10) == 3628800);
    CHECK(binomial(10, 3) == 120);
    CHECK(binomial(3, 5) == 0);
    CHECK(binomial(4, -1) == 0);
    CHECK(harmonic(0) == 0);
    CHECK(harmonic(4) == frac(25, 12));
    for (int n = 1; n < 30; ++n)
        for (int k = 1; k < n; ++k) CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
}

TEST_CASE("polynomial division and gcd") {
    Poly a{Rational(-1), Rational(0), Rational(1)};  // z^2 - 1
    Poly b{Rational(1), Rational(1)};                // z + 1
    auto [q, r] = divmod(a * Poly{Rational(2), Rational(3)} + Poly(5), b);
    CHECK(q * b + r == a * Poly{Rational(2), Rational(3)} + Poly(5));
    CHECK(r.degree() < b.degree());
    CHECK(gcd(a * Poly{Rational(3), Rational(1)}, b * Poly{Rational(3), Rational(1)}) ==
          (b * Poly{Rational(3), Rational(1)}).monic());
    CHECK(a.taylor_shift(2)(Rational(1)) == a(Rational(3)));
}

TEST_CASE("rational functions stay reduced") {
    RatFun z = RatFun::z();
    RatFun f = (z * z - RatFun(1)) / (z - RatFun(1));
    CHECK(f == z + RatFun(1));
    CHECK(f.den().degree() == 0);
    CHECK((RatFun(1) / z).at_inverse() == z);
    CHECK((z.pow(3) / (z + RatFun(2))).order_at_infinity() == -2);
}

TEST_CASE("series reversion inverts composition") {
    std::vector<Rational> c(9, Rational(0));
    c[1] = 1;
    c[2] = 1;
    c[3] = frac(-1, 3);
    auto g = LocalSeries::formal(c);
    auto h = revert(g);
    auto id = compose(g, h);
    for (int e = 0; e <= 8; ++e) CHECK(id[e] == (e == 1 ? 1 : 0));
}

TEST_CASE("log1p and pow1p against known coefficients") {
    auto t = LocalSeries::formal({0, 1, 0, 0, 0, 0, 0});
    auto l = log1p(t);
    for (int e = 1; e <= 6; ++e) CHECK(l[e] == frac(e % 2 ? 1 : -1, e));
    auto s = pow1p(t, frac(1, 2));
    Rational c = 1;
    for (int e = 0; e <= 6; ++e) {
        CHECK(s[e] == c);
        c = c * (frac(1, 2) - e) / (e + 1);
    }
}

TEST_CASE("series precision is tracked") {
    auto t = LocalSeries::formal({0, 1, 0, 0});
    CHECK_THROWS_AS(t[4], PrecisionError);
}

TEST_CASE("residues of rational forms") {
    // dz/(z(z - 1)): residue -1 at 0, +1 at 1, 0 at infinity
    RatForm f = RatForm::one_form(RatFun(Poly(1), Poly{Rational(0), Rational(-1), Rational(1)}));
    CHECK(residue_at(f, Point::at(0)) == -1);
    CHECK(residue_at(f, Point::at(1)) == 1);
    CHECK(residue_at_infinity(f) == 0);
    RatForm dz_over_z = RatForm::one_form(RatFun(Poly(1), Poly::z()));
    CHECK(residue_at_infinity(dz_over_z) == -1);
}

#pragma once

#include <string>
#include <vector>

#include "gwp1/poly.hpp"
#include "gwp1/rational.hpp"

namespace gwp1 {

// A finite center z = a, or z = infinity (local coordinate w = 1/z).
struct Point {
    bool infinite = false;
    Rational a;

    static Point at(const Rational& a) { return {false, a}; }
    static Point infinity() { return {true, Rational(0)}; }
    friend bool operator==(const Point& p, const Point& q) {
        return p.infinite == q.infinite && (p.infinite || p.a == q.a);
    }
    std::string str() const { return infinite ? "inf" : to_string(a); }
};

// Truncated Laurent series sum_{e=lo}^{hi} c_e t^e + O(t^{hi+1}).
// No terms below lo exist; coefficients above hi are unknown.
class LocalSeries {
public:
    LocalSeries() = default;
    // Zero series known on [lo, hi].
    LocalSeries(Point center, int lo, int hi);
    LocalSeries(Point center, int lo, std::vector<Rational> coeffs);

    // Power series in a formal variable (center 0).
    static LocalSeries formal(std::vector<Rational> coeffs, int lo = 0);
    // The local coordinate t itself, known to order hi.
    static LocalSeries variable(Point center, int hi);

    const Point& center() const { return center_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    // Coefficient of t^e; zero below lo, PrecisionError above hi.
    Rational coeff(int e) const;
    Rational operator[](int e) const { return coeff(e); }
    void set(int e, const Rational& v);
    void add_to(int e, const Rational& v);

    // Smallest exponent with nonzero coefficient; hi+1 when all known terms vanish.
    int valuation() const;
    bool is_zero_on_window() const { return valuation() > hi_; }

    LocalSeries& operator+=(const LocalSeries& o);
    LocalSeries& operator-=(const LocalSeries& o);
    LocalSeries& operator*=(const Rational& s);
    friend LocalSeries operator+(LocalSeries a, const LocalSeries& b) { return a += b; }
    friend LocalSeries operator-(LocalSeries a, const LocalSeries& b) { return a -= b; }
    friend LocalSeries operator-(LocalSeries a) { return a *= Rational(-1); }
    friend LocalSeries operator*(LocalSeries a, const Rational& s) { return a *= s; }
    friend LocalSeries operator*(const Rational& s, LocalSeries a) { return a *= s; }
    friend LocalSeries operator*(const LocalSeries& a, const LocalSeries& b);
    friend bool operator==(const LocalSeries& a, const LocalSeries& b);

    // Multiplicative inverse; the lowest nonzero known term must exist.
    LocalSeries inverse() const;
    // d/dt.
    LocalSeries derivative() const;
    // Multiply by t^k.
    LocalSeries shifted(int k) const;
    // Drop knowledge above new_hi (must not exceed hi).
    LocalSeries truncated(int new_hi) const;
    // Terms with exponent < 0.
    LocalSeries principal_part() const;

    std::string str(const char* var = "t") const;

private:
    void check_center(const LocalSeries& o) const;
    Point center_;
    int lo_ = 0;
    int hi_ = -1;
    std::vector<Rational> c_;
};

// f(g(t)) where f is a power series (lo >= 0) and g has valuation >= 1.
LocalSeries compose(const LocalSeries& f, const LocalSeries& g);
// Compositional inverse of a series t*(c1 + ...) with c1 != 0.
LocalSeries revert(const LocalSeries& g);
// ln(1 + u) for u of valuation >= 1.
LocalSeries log1p(const LocalSeries& u);
// (1 + u)^r for u of valuation >= 1.
LocalSeries pow1p(const LocalSeries& u, const Rational& r);

// Order of vanishing of f at the center (in the local coordinate, including the
// dz Jacobian for forms at infinity).
int valuation_at(const RatForm& f, const Point& center);

// Laurent expansion of f on [lo, hi]. Throws PrecisionError if f has nonzero
// terms below lo.
LocalSeries series_at(const RatForm& f, const Point& center, int lo, int hi);
// Same, with lo set to the exact valuation.
LocalSeries series_at(const RatForm& f, const Point& center, int hi);
LocalSeries series_at(const RatFun& f, const Rational& center, int lo, int hi);

Rational residue(const LocalSeries& s);
Rational residue_at(const RatForm& f, const Point& center);
Rational residue_at_infinity(const RatForm& f);

// Coefficients c_b (b = 0..depth) of f = sum c_b (b+1)! dx / x^{b+2} at z = infinity.
std::vector<Rational> expand_at_infinity_in_x(const RatForm& f, int depth);

}  // namespace gwp1

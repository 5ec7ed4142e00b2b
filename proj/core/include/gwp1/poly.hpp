#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "gwp1/rational.hpp"

namespace gwp1 {

// Dense univariate polynomial over Q; coefficient i multiplies z^i.
class Poly {
public:
    Poly() = default;
    Poly(const Rational& c);
    Poly(long c) : Poly(Rational(c)) {}
    Poly(std::initializer_list<Rational> cs);
    explicit Poly(std::vector<Rational> cs);

    static Poly monomial(const Rational& c, int deg);
    static Poly z() { return monomial(1, 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const Rational& lead() const { return c_.back(); }
    Rational operator[](int i) const;
    const std::vector<Rational>& coeffs() const { return c_; }

    Rational operator()(const Rational& x) const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Rational& s);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) { return a *= Rational(-1); }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
    friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    Poly derivative() const;
    Poly pow(int e) const;
    // P(c + t) as a polynomial in t.
    Poly taylor_shift(const Rational& c) const;
    // z^deg * P(1/z) with deg = degree().
    Poly reversed() const;
    Poly monic() const;
    // Largest v with z^v | P (P nonzero).
    int valuation() const;

    std::string str(const char* var = "z") const;

private:
    void trim();
    std::vector<Rational> c_;
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly gcd(Poly a, Poly b);

// Reduced rational function num/den over Q with monic denominator.
class RatFun {
public:
    RatFun() : num_(), den_(1) {}
    RatFun(const Rational& c) : num_(c), den_(1) {}
    RatFun(long c) : RatFun(Rational(c)) {}
    RatFun(Poly p) : num_(std::move(p)), den_(1) {}
    RatFun(Poly num, Poly den);

    static RatFun z() { return RatFun(Poly::z()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    // Throws DomainError at a pole.
    Rational operator()(const Rational& x) const;

    RatFun& operator+=(const RatFun& o);
    RatFun& operator-=(const RatFun& o);
    RatFun& operator*=(const RatFun& o);
    RatFun& operator/=(const RatFun& o);
    friend RatFun operator+(RatFun a, const RatFun& b) { return a += b; }
    friend RatFun operator-(RatFun a, const RatFun& b) { return a -= b; }
    friend RatFun operator-(RatFun a) { return a *= RatFun(-1); }
    friend RatFun operator*(RatFun a, const RatFun& b) { return a *= b; }
    friend RatFun operator/(RatFun a, const RatFun& b) { return a /= b; }
    friend bool operator==(const RatFun& a, const RatFun& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    RatFun derivative() const;
    RatFun pow(int e) const;
    // f(1/z).
    RatFun at_inverse() const;
    // Order at z = infinity: deg(den) - deg(num); large for zero.
    int order_at_infinity() const;

    std::string str(const char* var = "z") const;

private:
    void normalize();
    Poly num_, den_;
};

// Either a function f(z) or a 1-form f(z) dz.
class RatForm {
public:
    RatForm() = default;
    RatForm(RatFun f, bool form) : f_(std::move(f)), form_(form) {}
    static RatForm function(RatFun f) { return {std::move(f), false}; }
    static RatForm one_form(RatFun f) { return {std::move(f), true}; }

    const RatFun& coeff() const { return f_; }
    bool is_form() const { return form_; }
    bool is_zero() const { return f_.is_zero(); }

    RatForm& operator+=(const RatForm& o);
    RatForm& operator-=(const RatForm& o);
    friend RatForm operator+(RatForm a, const RatForm& b) { return a += b; }
    friend RatForm operator-(RatForm a, const RatForm& b) { return a -= b; }
    friend RatForm operator*(const Rational& s, RatForm a) { return {a.f_ * RatFun(s), a.form_}; }
    // function times function or function times form
    friend RatForm operator*(const RatForm& a, const RatForm& b);
    friend bool operator==(const RatForm& a, const RatForm& b) { return a.form_ == b.form_ && a.f_ == b.f_; }

    // d of a function.
    RatForm d() const;
    // form / form -> function.
    RatForm over(const RatForm& o) const;
    // Pullback under z -> 1/z.
    RatForm pullback_inverse() const;

    std::string str() const;

private:
    RatFun f_;
    bool form_ = true;
};

}  // namespace gwp1

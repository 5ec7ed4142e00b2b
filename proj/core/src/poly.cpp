#include "gwp1/poly.hpp"

#include <algorithm>
#include <climits>

namespace gwp1 {

Poly::Poly(const Rational& c) : c_{c} { trim(); }

Poly::Poly(std::initializer_list<Rational> cs) : c_(cs) { trim(); }

Poly::Poly(std::vector<Rational> cs) : c_(std::move(cs)) { trim(); }

Poly Poly::monomial(const Rational& c, int deg) {
    if (deg < 0) throw DomainError("negative monomial degree");
    std::vector<Rational> v(deg + 1);
    v[deg] = c;
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && gwp1::is_zero(c_.back())) c_.pop_back();
}

Rational Poly::operator[](int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
    return c_[i];
}

Rational Poly::operator()(const Rational& x) const {
    Rational r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator*=(const Rational& s) {
    if (gwp1::is_zero(s)) {
        c_.clear();
        return *this;
    }
    for (auto& x : c_) x *= s;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (gwp1::is_zero(a.c_[i])) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
    return Poly(std::move(r));
}

Poly Poly::pow(int e) const {
    if (e < 0) throw DomainError("negative polynomial power");
    Poly r(1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

Poly Poly::taylor_shift(const Rational& c) const {
    // Horner in the shifted variable.
    Poly r;
    Poly lin{c, Rational(1)};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * lin + Poly(*it);
    return r;
}

Poly Poly::reversed() const {
    std::vector<Rational> r(c_.rbegin(), c_.rend());
    return Poly(std::move(r));
}

Poly Poly::monic() const {
    if (is_zero()) return {};
    Poly r = *this;
    r *= 1 / lead();
    return r;
}

int Poly::valuation() const {
    if (is_zero()) throw DomainError("valuation of zero polynomial");
    int v = 0;
    while (gwp1::is_zero(c_[v])) ++v;
    return v;
}

std::string Poly::str(const char* var) const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = c_[i];
        if (gwp1::is_zero(c)) continue;
        std::string cs = to_string(abs(c));
        bool neg = sgn(c) < 0;
        if (s.empty())
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        if (i == 0) {
            s += cs;
            continue;
        }
        if (cs != "1") s += cs + "*";
        s += var;
        if (i > 1) s += "^" + std::to_string(i);
    }
    return s;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<Rational> r = a.coeffs();
    int db = b.degree();
    int da = a.degree();
    if (da < db) return {Poly(), a};
    std::vector<Rational> q(da - db + 1);
    Rational inv = 1 / b.lead();
    const auto& bc = b.coeffs();
    for (int i = da; i >= db; --i) {
        if (gwp1::is_zero(r[i])) continue;
        Rational f = r[i] * inv;
        q[i - db] = f;
        for (int j = 0; j <= db; ++j) r[i - db + j] -= f * bc[j];
    }
    r.resize(db);
    return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DomainError("rational function with zero denominator");
    normalize();
}

void RatFun::normalize() {
    if (num_.is_zero()) {
        den_ = Poly(1);
        return;
    }
    if (den_.degree() > 0) {
        Poly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = divmod(num_, g).first;
            den_ = divmod(den_, g).first;
        }
    }
    Rational l = den_.lead();
    if (l != 1) {
        num_ *= 1 / l;
        den_ *= 1 / l;
    }
}

Rational RatFun::operator()(const Rational& x) const {
    Rational d = den_(x);
    if (gwp1::is_zero(d)) throw DomainError("evaluation at a pole: " + to_string(x));
    return num_(x) / d;
}

RatFun& RatFun::operator+=(const RatFun& o) {
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
    }
    normalize();
    return *this;
}

RatFun& RatFun::operator-=(const RatFun& o) {
    if (den_ == o.den_) {
        num_ -= o.num_;
    } else {
        num_ = num_ * o.den_ - o.num_ * den_;
        den_ = den_ * o.den_;
    }
    normalize();
    return *this;
}

RatFun& RatFun::operator*=(const RatFun& o) {
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

RatFun& RatFun::operator/=(const RatFun& o) {
    if (o.is_zero()) throw DomainError("division by zero rational function");
    num_ = num_ * o.den_;
    den_ = den_ * o.num_;
    normalize();
    return *this;
}

RatFun RatFun::derivative() const {
    return RatFun(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFun RatFun::pow(int e) const {
    if (e < 0) return RatFun(1) / pow(-e);
    return RatFun(num_.pow(e), den_.pow(e));
}

RatFun RatFun::at_inverse() const {
    if (is_zero()) return {};
    // num(1/z) = z^-dn rev(num), den(1/z) = z^-dd rev(den)
    int dn = num_.degree(), dd = den_.degree();
    Poly n = num_.reversed(), d = den_.reversed();
    if (dd >= dn)
        n = n * Poly::monomial(1, dd - dn);
    else
        d = d * Poly::monomial(1, dn - dd);
    return RatFun(n, d);
}

int RatFun::order_at_infinity() const {
    if (is_zero()) return INT_MAX / 2;
    return den_.degree() - num_.degree();
}

std::string RatFun::str(const char* var) const {
    if (den_.degree() == 0) return num_.str(var);
    return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

RatForm& RatForm::operator+=(const RatForm& o) {
    if (is_zero()) form_ = o.form_;
    if (!o.is_zero() && o.form_ != form_) throw DomainError("adding a function to a 1-form");
    f_ += o.f_;
    return *this;
}

RatForm& RatForm::operator-=(const RatForm& o) {
    if (is_zero()) form_ = o.form_;
    if (!o.is_zero() && o.form_ != form_) throw DomainError("subtracting a function from a 1-form");
    f_ -= o.f_;
    return *this;
}

RatForm operator*(const RatForm& a, const RatForm& b) {
    if (a.form_ && b.form_) throw DomainError("product of two 1-forms");
    return {a.f_ * b.f_, a.form_ || b.form_};
}

RatForm RatForm::d() const {
    if (form_) throw DomainError("d of a 1-form");
    return one_form(f_.derivative());
}

RatForm RatForm::over(const RatForm& o) const {
    if (form_ != o.form_) throw DomainError("ratio of a form and a function");
    return function(f_ / o.f_);
}

RatForm RatForm::pullback_inverse() const {
    RatFun g = f_.at_inverse();
    if (form_) g *= -RatFun(1) / RatFun(Poly::monomial(1, 2));
    return {g, form_};
}

std::string RatForm::str() const {
    if (!form_) return f_.str();
    return "(" + f_.str() + ") dz";
}

}  // namespace gwp1

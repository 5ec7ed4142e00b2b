#include "gwp1/series.hpp"

#include <algorithm>
#include <climits>

namespace gwp1 {

LocalSeries::LocalSeries(Point center, int lo, int hi)
    : center_(std::move(center)), lo_(lo), hi_(std::max(hi, lo - 1)), c_(std::max(0, hi - lo + 1)) {}

LocalSeries::LocalSeries(Point center, int lo, std::vector<Rational> coeffs)
    : center_(std::move(center)), lo_(lo), hi_(lo + static_cast<int>(coeffs.size()) - 1), c_(std::move(coeffs)) {}

LocalSeries LocalSeries::formal(std::vector<Rational> coeffs, int lo) {
    return LocalSeries(Point::at(0), lo, std::move(coeffs));
}

LocalSeries LocalSeries::variable(Point center, int hi) {
    LocalSeries s(std::move(center), 1, hi);
    if (hi >= 1) s.set(1, 1);
    return s;
}

Rational LocalSeries::coeff(int e) const {
    if (e < lo_) return 0;
    if (e > hi_)
        throw PrecisionError("coefficient t^" + std::to_string(e) + " outside window [" + std::to_string(lo_) + "," +
                             std::to_string(hi_) + "]");
    return c_[e - lo_];
}

void LocalSeries::set(int e, const Rational& v) {
    if (e < lo_ || e > hi_) throw PrecisionError("set outside window");
    c_[e - lo_] = v;
}

void LocalSeries::add_to(int e, const Rational& v) {
    if (e < lo_ || e > hi_) throw PrecisionError("add outside window");
    c_[e - lo_] += v;
}

int LocalSeries::valuation() const {
    for (int e = lo_; e <= hi_; ++e)
        if (!is_zero(c_[e - lo_])) return e;
    return hi_ + 1;
}

void LocalSeries::check_center(const LocalSeries& o) const {
    if (!(center_ == o.center_)) throw DomainError("series at different centers");
}

LocalSeries& LocalSeries::operator+=(const LocalSeries& o) {
    check_center(o);
    int lo = std::min(lo_, o.lo_), hi = std::min(hi_, o.hi_);
    LocalSeries r(center_, lo, hi);
    for (int e = lo; e <= hi; ++e) r.c_[e - lo] = coeff(e) + o.coeff(e);
    return *this = std::move(r);
}

LocalSeries& LocalSeries::operator-=(const LocalSeries& o) {
    check_center(o);
    int lo = std::min(lo_, o.lo_), hi = std::min(hi_, o.hi_);
    LocalSeries r(center_, lo, hi);
    for (int e = lo; e <= hi; ++e) r.c_[e - lo] = coeff(e) - o.coeff(e);
    return *this = std::move(r);
}

LocalSeries& LocalSeries::operator*=(const Rational& s) {
    for (auto& x : c_) x *= s;
    return *this;
}

LocalSeries operator*(const LocalSeries& a, const LocalSeries& b) {
    a.check_center(b);
    int lo = a.lo_ + b.lo_;
    int hi = std::min(a.hi_ + b.lo_, b.hi_ + a.lo_);
    LocalSeries r(a.center_, lo, hi);
    if (hi < lo) return r;
    int n = hi - lo;
    for (int i = 0; i <= n && i < static_cast<int>(a.c_.size()); ++i) {
        if (is_zero(a.c_[i])) continue;
        int jmax = std::min(n - i, static_cast<int>(b.c_.size()) - 1);
        for (int j = 0; j <= jmax; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
}

bool operator==(const LocalSeries& a, const LocalSeries& b) {
    if (!(a.center_ == b.center_) || a.hi_ != b.hi_) return false;
    for (int e = std::min(a.lo_, b.lo_); e <= a.hi_; ++e)
        if (a.coeff(e) != b.coeff(e)) return false;
    return true;
}

LocalSeries LocalSeries::inverse() const {
    int v = valuation();
    if (v > hi_) throw PrecisionError("inverse of a series with no known nonzero term");
    // this = t^v (u0 + u1 t + ...), known to relative order hi - v.
    int n = hi_ - v;
    LocalSeries r(center_, -v, -v + n);
    Rational inv0 = 1 / c_[v - lo_];
    for (int k = 0; k <= n; ++k) {
        Rational acc = (k == 0) ? Rational(1) : Rational(0);
        for (int j = 1; j <= k; ++j) {
            const Rational& u = c_[v - lo_ + j];
            if (!is_zero(u)) acc -= u * r.c_[k - j];
        }
        r.c_[k] = acc * inv0;
    }
    return r;
}

LocalSeries LocalSeries::derivative() const {
    int lo = lo_ == 0 ? 0 : lo_ - 1;
    LocalSeries r(center_, lo, hi_ - 1);
    for (int e = std::max(lo_, lo + 1); e <= hi_; ++e)
        if (e != 0) r.set(e - 1, c_[e - lo_] * e);
    return r;
}

LocalSeries LocalSeries::shifted(int k) const {
    return LocalSeries(center_, lo_ + k, c_);
}

LocalSeries LocalSeries::truncated(int new_hi) const {
    if (new_hi > hi_) throw PrecisionError("truncation beyond known window");
    LocalSeries r(center_, lo_, new_hi);
    for (int e = lo_; e <= new_hi; ++e) r.c_[e - lo_] = c_[e - lo_];
    return r;
}

LocalSeries LocalSeries::principal_part() const {
    if (hi_ < -1) throw PrecisionError("principal part needs window up to -1");
    int lo = std::min(lo_, 0);
    LocalSeries r(center_, lo, -1);
    for (int e = lo_; e <= -1; ++e) r.c_[e - lo] = c_[e - lo_];
    return r;
}

std::string LocalSeries::str(const char* var) const {
    std::string s;
    for (int e = lo_; e <= hi_; ++e) {
        const Rational& c = c_[e - lo_];
        if (is_zero(c)) continue;
        if (!s.empty()) s += " + ";
        s += "(" + to_string(c) + ")";
        if (e != 0) s += std::string("*") + var + "^" + std::to_string(e);
    }
    if (s.empty()) s = "0";
    return s + " + O(" + var + "^" + std::to_string(hi_ + 1) + ")";
}

LocalSeries compose(const LocalSeries& f, const LocalSeries& g) {
    if (f.lo() < 0) throw DomainError("compose: outer series must be a power series");
    int v = g.valuation();
    if (g.lo() < 1 && v < 1) throw DomainError("compose: inner series must vanish at 0");
    if (v > g.hi()) {
        // g = O(t^{hi+1}), so f(g) = f_0 + O(t^{hi+1}).
        LocalSeries r(g.center(), 0, std::max(g.hi(), 0));
        r.set(0, f.coeff(0));
        return g.hi() >= 0 ? r : LocalSeries(g.center(), 0, g.hi());
    }
    // Error from f's tail: O(t^{(hi_f+1) v}); from g's tail: O(t^{hi_g + 1}) at worst.
    int hi = std::min((f.hi() + 1) * v - 1, g.hi());
    LocalSeries gg = g.truncated(std::max(g.lo(), std::min(g.hi(), hi)));
    LocalSeries r(g.center(), 0, hi);
    if (hi < 0) return r;
    // Horner: f0 + g(f1 + g(f2 + ...)).
    int top = std::min(f.hi(), hi / v);
    LocalSeries acc(g.center(), 0, hi);
    for (int e = top; e >= 0; --e) {
        LocalSeries prod = acc * gg;
        LocalSeries next(g.center(), 0, hi);
        for (int k = std::max(0, prod.lo()); k <= hi && k <= prod.hi(); ++k) next.set(k, prod.coeff(k));
        next.add_to(0, f.coeff(e));
        acc = std::move(next);
    }
    return acc;
}

LocalSeries revert(const LocalSeries& g) {
    if (g.valuation() != 1 || g.lo() < 0) throw DomainError("revert: series must have valuation exactly 1");
    int n = g.hi();
    // Newton-free iteration: h_{k} from g(h(s)) = s, solve order by order.
    Rational c1inv = 1 / g.coeff(1);
    LocalSeries h(g.center(), 1, n);
    h.set(1, c1inv);
    for (int k = 2; k <= n; ++k) {
        LocalSeries trial = compose(g, h.truncated(k));
        // trial = s + (error) s^k + ...; adjust h_k.
        Rational err = trial.coeff(k);
        h.set(k, -err * c1inv);
    }
    return h;
}

LocalSeries log1p(const LocalSeries& u) {
    int hi = u.hi();
    std::vector<Rational> c(std::max(0, hi) + 1);
    for (int e = 1; e <= hi; ++e) c[e] = frac(e % 2 ? 1 : -1, e);
    return compose(LocalSeries::formal(std::move(c)), u);
}

LocalSeries pow1p(const LocalSeries& u, const Rational& r) {
    int hi = u.hi();
    std::vector<Rational> c(std::max(0, hi) + 1);
    Rational b = 1;
    for (int e = 0; e <= hi; ++e) {
        c[e] = b;
        b = b * (r - e) / (e + 1);
    }
    return compose(LocalSeries::formal(std::move(c)), u);
}

namespace {

// Coefficient function in the local coordinate: f(a + t), or for infinity f(1/w)
// (times -1/w^2 for forms).
RatFun local_coefficient(const RatForm& f, const Point& center) {
    if (!center.infinite) return f.coeff();
    RatFun g = f.coeff().at_inverse();
    if (f.is_form()) g *= -RatFun(1) / RatFun(Poly::monomial(1, 2));
    return g;
}

struct Split {
    int v;
    Poly num, den;  // units at t = 0 after removing powers of t
};

Split split_at(const RatFun& g, const Rational& a) {
    Poly n = g.num().taylor_shift(a);
    Poly d = g.den().taylor_shift(a);
    if (n.is_zero()) return {INT_MAX / 4, Poly(), Poly(1)};
    int vn = n.valuation(), vd = d.valuation();
    auto strip = [](const Poly& p, int v) {
        std::vector<Rational> c(p.coeffs().begin() + v, p.coeffs().end());
        return Poly(std::move(c));
    };
    return {vn - vd, strip(n, vn), strip(d, vd)};
}

}  // namespace

int valuation_at(const RatForm& f, const Point& center) {
    RatFun g = local_coefficient(f, center);
    return split_at(g, center.infinite ? Rational(0) : center.a).v;
}

LocalSeries series_at(const RatFun& g, const Rational& a, int lo, int hi) {
    Point c = Point::at(a);
    LocalSeries r(c, lo, hi);
    Split s = split_at(g, a);
    if (s.num.is_zero() || s.v > hi) return r;
    if (s.v < lo)
        throw PrecisionError("series window [" + std::to_string(lo) + "," + std::to_string(hi) +
                             "] misses terms from order " + std::to_string(s.v));
    int n = hi - s.v;
    Rational inv0 = 1 / s.den[0];
    const auto& dc = s.den.coeffs();
    std::vector<Rational> q(n + 1);
    for (int k = 0; k <= n; ++k) {
        Rational acc = s.num[k];
        int jmax = std::min(k, static_cast<int>(dc.size()) - 1);
        for (int j = 1; j <= jmax; ++j)
            if (!is_zero(dc[j])) acc -= dc[j] * q[k - j];
        q[k] = acc * inv0;
        r.set(s.v + k, q[k]);
    }
    return r;
}

LocalSeries series_at(const RatForm& f, const Point& center, int lo, int hi) {
    RatFun g = local_coefficient(f, center);
    LocalSeries s = series_at(g, center.infinite ? Rational(0) : center.a, lo, hi);
    return LocalSeries(center, s.lo(), [&] {
        std::vector<Rational> c;
        for (int e = s.lo(); e <= s.hi(); ++e) c.push_back(s.coeff(e));
        return c;
    }());
}

LocalSeries series_at(const RatForm& f, const Point& center, int hi) {
    int v = valuation_at(f, center);
    return series_at(f, center, std::min(v, hi + 1), hi);
}

Rational residue(const LocalSeries& s) {
    if (s.hi() < -1) throw PrecisionError("residue: window does not reach exponent -1");
    if (s.lo() > -1) {
        // Window starts above -1: only sound if caller guarantees no principal part,
        // which a window not containing -1 cannot certify.
        throw PrecisionError("residue: window does not contain exponent -1");
    }
    return s.coeff(-1);
}

Rational residue_at(const RatForm& f, const Point& center) {
    if (!f.is_form()) throw DomainError("residue of a function");
    int v = valuation_at(f, center);
    if (v >= 0) return 0;
    return residue(series_at(f, center, v, -1));
}

Rational residue_at_infinity(const RatForm& f) { return residue_at(f, Point::infinity()); }

std::vector<Rational> expand_at_infinity_in_x(const RatForm& f, int depth) {
    if (!f.is_form()) throw DomainError("expand_at_infinity_in_x needs a 1-form");
    if (depth < 0) throw DomainError("negative depth");
    Point inf = Point::infinity();
    int v = valuation_at(f, inf);
    if (v < 0) throw DomainError("form has a pole at infinity");
    // phi(w) dw with w = 1/z; s = 1/x = w/(1+w^2).
    LocalSeries phi = series_at(f, inf, 0, depth);
    LocalSeries s_of_w(inf, 1, depth + 1);
    for (int e = 1; e <= depth + 1; e += 2) s_of_w.set(e, (e / 2) % 2 ? -1 : 1);
    LocalSeries w_of_s = revert(s_of_w);
    LocalSeries phi_s = compose(phi, w_of_s);
    LocalSeries integrand = phi_s * w_of_s.derivative();
    std::vector<Rational> out(depth + 1);
    for (int b = 0; b <= depth; ++b) out[b] = -integrand.coeff(b) / factorial(b + 1);
    return out;
}

}  // namespace gwp1

#include "gwp1/curve.hpp"

#include <mutex>
#include <shared_mutex>
#include <vector>

namespace gwp1 {

RatFun x_function() { return RatFun::z() + RatFun(1) / RatFun::z(); }

RatForm dx_form() { return RatForm::one_form(RatFun(1) - RatFun(1) / RatFun(Poly::monomial(1, 2))); }

RatForm lower(const RatForm& f) {
    if (!f.is_form()) throw DomainError("lower() needs a 1-form");
    return Rational(-1) * f.over(dx_form()).d();
}

namespace {

std::shared_mutex xi_mu;
std::vector<RatForm> xi_table[2];

void check_ramification(int a) {
    if (a != 1 && a != -1) throw DomainError("not a ramification point: " + std::to_string(a));
}

}  // namespace

RatForm xi(int alpha, int k) {
    if (alpha != 0 && alpha != 1) throw DomainError("alpha must be 0 or 1");
    if (k < -1) throw DomainError("xi index below -1");
    std::size_t pos = static_cast<std::size_t>(k + 1);
    {
        std::shared_lock lock(xi_mu);
        if (pos < xi_table[alpha].size()) return xi_table[alpha][pos];
    }
    std::unique_lock lock(xi_mu);
    auto& tab = xi_table[alpha];
    if (tab.empty()) tab.push_back(RatForm::one_form(alpha == 0 ? RatFun(1) : RatFun(1) / RatFun::z()));
    while (tab.size() <= pos) tab.push_back(lower(tab.back()));
    return tab[pos];
}

RatForm xi(const XiIndex& idx) { return xi(idx.alpha, idx.k); }

RatForm xi_odd_seed(int alpha) {
    RatFun f = RatFun(1) / RatFun::z();
    if (alpha == 0) f *= x_function() * RatFun(Rational(1, 2));
    return RatForm::one_form(f);
}

RatForm basis_form(const XiIndex& idx) {
    if (idx.k == -1) return xi_odd_seed(idx.alpha);
    if (idx.k < -1) throw DomainError("basis index below -1");
    return xi(idx);
}

namespace {

struct SeriesKey {
    int alpha, k, a;
    auto operator<=>(const SeriesKey&) const = default;
};
std::shared_mutex series_mu;
std::map<SeriesKey, LocalSeries> series_memo;

}  // namespace

LocalSeries xi_series(const XiIndex& idx, int a, int hi) {
    check_ramification(a);
    if (idx.k < 0) throw DomainError("xi_series needs k >= 0");
    SeriesKey key{idx.alpha, idx.k, a};
    {
        std::shared_lock lock(series_mu);
        auto it = series_memo.find(key);
        if (it != series_memo.end() && it->second.hi() >= hi) return it->second.truncated(hi);
    }
    int lo = -(2 * idx.k + 2);
    // Compute a little beyond the request so nearby requests hit the memo.
    int want = std::max(hi, lo + 16);
    LocalSeries s = series_at(xi(idx), Point::at(a), lo, want);
    std::unique_lock lock(series_mu);
    auto it = series_memo.find(key);
    if (it == series_memo.end()) series_memo.emplace(key, s);
    else if (it->second.hi() < s.hi()) it->second = s;
    return s.truncated(hi);
}

Rational xi_leading(const XiIndex& idx, int a) {
    return xi_series(idx, a, -(2 * idx.k + 2)).coeff(-(2 * idx.k + 2));
}

XiDecomposition x_action(const XiIndex& idx) {
    if (idx.k < 0) throw DomainError("x_action needs k >= 0");
    XiDecomposition d;
    d[{idx.k, 1 - idx.alpha}] = 2;
    int c = idx.k + idx.alpha;
    if (c != 0) d[{idx.k - 1, idx.alpha}] = c;
    return d;
}

RatForm odd_part(const RatForm& f) {
    if (!f.is_form()) throw DomainError("odd_part needs a 1-form");
    return Rational(1, 2) * (f - f.pullback_inverse());
}

bool is_odd(const RatForm& f) { return (f + f.pullback_inverse()).is_zero(); }

void add_into(XiDecomposition& acc, const XiDecomposition& d, const Rational& scale) {
    for (const auto& [k, v] : d) {
        Rational& slot = acc[k];
        slot += v * scale;
        if (is_zero(slot)) acc.erase(k);
    }
}

XiDecomposition decompose_principal(const LocalSeries& at_plus, const LocalSeries& at_minus) {
    if (at_plus.hi() < -1 || at_minus.hi() < -1) throw PrecisionError("decompose: windows must reach t^-1");
    LocalSeries rp = at_plus.principal_part();
    LocalSeries rm = at_minus.principal_part();
    int order = std::max(-rp.valuation(), -rm.valuation());
    XiDecomposition out;
    if (order <= 0) return out;
    if (order % 2) throw DomainError("decompose: leading pole has odd order " + std::to_string(order));
    for (int k = (order - 2) / 2; k >= 0; --k) {
        int e = -(2 * k + 2);
        Rational pp = rp.coeff(e), pm = rm.coeff(e);
        if (is_zero(pp) && is_zero(pm)) continue;
        XiIndex i0{k, 0}, i1{k, 1};
        Rational a00 = xi_leading(i0, 1), a01 = xi_leading(i1, 1);
        Rational a10 = xi_leading(i0, -1), a11 = xi_leading(i1, -1);
        Rational det = a00 * a11 - a01 * a10;
        Rational c0 = (pp * a11 - a01 * pm) / det;
        Rational c1 = (a00 * pm - a10 * pp) / det;
        if (!is_zero(c0)) {
            out[i0] = c0;
            rp -= c0 * xi_series(i0, 1, -1);
            rm -= c0 * xi_series(i0, -1, -1);
        }
        if (!is_zero(c1)) {
            out[i1] = c1;
            rp -= c1 * xi_series(i1, 1, -1);
            rm -= c1 * xi_series(i1, -1, -1);
        }
    }
    if (!rp.is_zero_on_window() || !rm.is_zero_on_window())
        throw DomainError("decompose: principal parts not in the xi span; residual at +1: " + rp.str() +
                          ", at -1: " + rm.str());
    return out;
}

XiDecomposition decompose_odd_form(const RatForm& f) {
    if (!f.is_form()) throw DomainError("decompose_odd_form needs a 1-form");
    if (f.is_zero()) return {};
    if (!is_odd(f)) throw DomainError("decompose_odd_form: form is not odd: " + f.str());
    if (f.coeff().order_at_infinity() < 2) throw DomainError("decompose_odd_form: pole at infinity");
    // Denominator must be (z-1)^p (z+1)^q.
    Poly d = f.coeff().den();
    int pole[2] = {0, 0};
    const Poly lin[2] = {Poly{Rational(-1), Rational(1)}, Poly{Rational(1), Rational(1)}};
    for (int s = 0; s < 2; ++s) {
        while (d.degree() > 0) {
            auto [q, r] = divmod(d, lin[s]);
            if (!r.is_zero()) break;
            d = q;
            ++pole[s];
        }
    }
    if (d.degree() > 0) throw DomainError("decompose_odd_form: poles away from +-1: " + f.str());
    LocalSeries sp = series_at(f, Point::at(1), -std::max(pole[0], 1), -1);
    LocalSeries sm = series_at(f, Point::at(-1), -std::max(pole[1], 1), -1);
    XiDecomposition out = decompose_principal(sp, sm);
    if (!(reconstruct(out) - f).is_zero()) throw DomainError("decompose_odd_form: reconstruction mismatch");
    return out;
}

RatForm reconstruct(const XiDecomposition& d) {
    RatForm acc = RatForm::one_form(RatFun());
    for (const auto& [idx, c] : d) acc += c * basis_form(idx);
    return acc;
}

LocalSeries y_diff_series(int a, int lo, int hi) {
    check_ramification(a);
    if (lo > 1) throw PrecisionError("y_diff_series: window must start at or below 1");
    Point c = Point::at(a);
    LocalSeries t = LocalSeries::variable(c, hi);
    LocalSeries l = log1p(t * Rational(a)) * Rational(2);
    LocalSeries r(c, lo, hi);
    for (int e = std::max(lo, 0); e <= hi; ++e) r.set(e, l.coeff(e));
    return r;
}

std::string to_string(const XiDecomposition& d) {
    std::string s = "{";
    for (const auto& [idx, c] : d) {
        if (s.size() > 1) s += ", ";
        s += idx.str() + ": " + to_string(c);
    }
    return s + "}";
}

}  // namespace gwp1

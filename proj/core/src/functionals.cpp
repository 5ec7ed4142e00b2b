#include "gwp1/functionals.hpp"

#include <deque>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace gwp1 {

namespace {

Rational fact(long n) { return factorial(n); }

// I^kind_b[xi^beta_0], b >= 0.
Rational table0(int kind, int b, int beta) {
    const int m = b / 2;
    const bool even = b % 2 == 0;
    if (kind == 0) {
        if (even && beta == 0) return (1 - 2 * m * harmonic(m)) / (fact(m) * fact(m));
        if (!even && beta == 1) return -2 * harmonic(m) / (fact(m) * fact(m));
        return 0;
    }
    if (even && beta == 1) return 1 / (fact(m) * fact(m));
    if (!even && beta == 0) return 1 / (fact(m) * fact(m + 1));
    return 0;
}

void check_kind(int kind) {
    if (kind != 0 && kind != 1) throw DomainError("functional kind must be 0 or 1");
}

// x * (combination), with x * (x/2)^{1-alpha} dz/z handled for alpha = 1 only.
XiDecomposition x_times(const XiDecomposition& d) {
    XiDecomposition out;
    for (const auto& [idx, c] : d) {
        if (is_zero(c)) continue;
        if (idx.k >= 0) {
            add_into(out, x_action(idx), c);
        } else if (idx.alpha == 1) {
            out[{-1, 0}] += 2 * c;
        } else {
            throw DomainError("x * x dz/z/2 leaves the span of the basis and seeds");
        }
    }
    return out;
}

RatFun z_pow(int e) {
    if (e >= 0) return RatFun(Poly::monomial(1, e));
    return RatFun(Poly(1), Poly::monomial(1, -e));
}

// Lagrange interpolation through (xs[i], ys[i]).
Poly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
    Poly acc;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        Poly basis(1);
        Rational den = 1;
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            basis = basis * Poly{-xs[j], Rational(1)};
            den *= xs[i] - xs[j];
        }
        acc += basis * (ys[i] / den);
    }
    return acc;
}

}  // namespace

Rational I1(int b, const RatForm& f) {
    if (b < 0) return 0;
    RatForm w = RatForm::function(x_function().pow(b + 1) * RatFun(1 / fact(b + 1)));
    return -residue_at_infinity(w * f);
}

Rational I_basis(int kind, int b, const XiIndex& idx) {
    check_kind(kind);
    if (idx.alpha != 0 && idx.alpha != 1) throw DomainError("I_basis: alpha must be 0 or 1");
    if (idx.k < -1) throw DomainError("I_basis: k must be >= -1");
    if (idx.k == -1) return b < 0 ? Rational(0) : table0(kind, b + 1, idx.alpha);
    const int s = b - idx.k;
    if (b < 0 || s < 0) return 0;
    return table0(kind, s, idx.alpha);
}

Rational I_basis(int kind, int b, const XiDecomposition& d) {
    Rational acc = 0;
    for (const auto& [idx, c] : d) acc += c * I_basis(kind, b, idx);
    return acc;
}

Rational I_xmul(int beta, int j, int k, const XiIndex& idx) {
    check_kind(beta);
    Rational v = binomial(j + k + beta, k) * I_basis(beta, j + k, idx);
    if (beta == 0) v += 2 * binomial(j + k, k) * (harmonic(j + k) - harmonic(j)) * I_basis(1, j + k - 1, idx);
    return v;
}

Rational I_xmul_expanded(int beta, int j, int k, const XiIndex& idx) {
    XiDecomposition d{{idx, Rational(1)}};
    for (int i = 0; i < k; ++i) d = x_times(d);
    return I_basis(beta, j, d) / fact(k);
}

const SBlock& smatrix(int k) {
    static std::mutex mu;
    static std::deque<SBlock> memo;
    if (k < 0) throw DomainError("smatrix: k must be >= 0");
    std::lock_guard<std::mutex> lock(mu);
    if (memo.empty()) {
        SBlock s0{};
        s0[0] = {Rational(1), Rational(0)};
        s0[1] = {Rational(0), Rational(1)};
        memo.push_back(s0);
    }
    while (static_cast<int>(memo.size()) <= k) {
        const int kk = static_cast<int>(memo.size());
        const SBlock& p = memo.back();
        SBlock s{};
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                const int c2 = kk + a - b;
                if (c2 == 0) {
                    s[a][b] = 0;  // (S_1)_0^1
                    continue;
                }
                Rational rhs = p[a][1 - b];
                if (a == 0) rhs -= p[1][b];
                s[a][b] = 2 * rhs / c2;
            }
        }
        memo.push_back(s);
    }
    return memo[k];
}

Rational contract_slots(const XiTensor& t, const std::vector<std::vector<Rational>>& w) {
    const int n = t.n();
    const int dim = t.dim();
    if (static_cast<int>(w.size()) != n) throw DomainError("contract_slots: one weight row per slot");
    for (const auto& row : w)
        if (static_cast<int>(row.size()) != dim) throw DomainError("contract_slots: weight row has wrong length");
    if (n == 0) return t.size() ? t[0] : Rational(0);
    std::vector<Rational> cur(t.size());
    for (std::size_t f = 0; f < t.size(); ++f) cur[f] = t[f];
    for (int slot = n - 1; slot >= 0; --slot) {
        std::vector<Rational> next(cur.size() / dim);
        std::vector<std::pair<int, const Rational*>> row;
        for (int c = 0; c < dim; ++c)
            if (!is_zero(w[slot][c])) row.emplace_back(c, &w[slot][c]);
        if (row.empty()) return 0;
        for (std::size_t f = 0; f < next.size(); ++f) {
            Rational acc = 0;
            for (const auto& [c, wc] : row) {
                const Rational& v = cur[f * dim + c];
                if (!is_zero(v)) acc += v * *wc;
            }
            next[f] = acc;
        }
        cur = std::move(next);
    }
    return cur[0];
}

Rational degree_of(int g, const std::vector<Insertion>& ins) {
    long s = 0;
    for (const auto& i : ins) s += i.b + i.alpha;
    return frac(s - (2L * g - 2) - static_cast<long>(ins.size()), 2);
}

Rational descendants(Engine& e, int g, const std::vector<Insertion>& ins) {
    const int n = static_cast<int>(ins.size());
    if (n < 1) throw DomainError("descendants: need at least one insertion");
    for (const auto& i : ins)
        if (i.b < 0 || (i.alpha != 0 && i.alpha != 1)) throw DomainError("descendants: bad insertion");
    Rational d = degree_of(g, ins);
    if (sgn(d) < 0 || !is_integer(d)) return 0;
    if (g == 0 && n == 1) return gw01(ins[0].b, ins[0].alpha);
    if (g == 0 && n == 2) return gw02(ins[0].b, ins[0].alpha, ins[1].b, ins[1].alpha);
    if (!is_stable(g, n)) throw DomainError("descendants: unsupported (g,n)");
    auto T = e.correlator(g, n);
    std::vector<std::vector<Rational>> w(n, std::vector<Rational>(T->dim()));
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < T->dim(); ++c) w[i][c] = I_basis(ins[i].alpha, ins[i].b, slot_index(c));
    return contract_slots(*T, w);
}

Rational descendants_raw(Engine& e, int g, const std::vector<Insertion>& ins) {
    const int n = static_cast<int>(ins.size());
    if (n < 1) throw DomainError("descendants: need at least one insertion");
    for (const auto& i : ins)
        if (i.b < 0 || (i.alpha != 0 && i.alpha != 1)) throw DomainError("descendants: bad insertion");
    if (g == 0 && n == 1) return gw01_pipeline(ins[0].b, ins[0].alpha);
    if (g == 0 && n == 2) return gw02_raw(ins[0].b, ins[0].alpha, ins[1].b, ins[1].alpha);
    if (!is_stable(g, n)) throw DomainError("descendants: unsupported (g,n)");
    auto T = e.correlator(g, n);
    std::vector<std::vector<Rational>> w(n, std::vector<Rational>(T->dim()));
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < T->dim(); ++c) w[i][c] = I_basis(ins[i].alpha, ins[i].b, slot_index(c));
    return contract_slots(*T, w);
}

Rational gw01(int b, int alpha) {
    if (b < 0) return 0;
    if (b % 2 == 0 && alpha == 1) {
        Rational f = fact(b / 2 + 1);
        return 1 / (f * f);
    }
    if (b % 2 == 1 && alpha == 0) {
        const int m = b / 2;
        Rational f = fact(m + 1);
        return -2 * harmonic(m + 1) / (f * f);
    }
    return 0;
}

Rational gw01_pipeline(int b, int alpha) { return I_basis(alpha, b + 1, XiIndex{-1, 1}); }

Rational gw02_raw(int b1, int a1, int b2, int a2) {
    if (b1 < 0 || b2 < 0) return 0;
    // R(j,k) = <tau^1_0 tau^a1_{j-1}><tau^0_0 tau^a2_{k-1}> + <tau^0_0 tau^a1_{j-1}><tau^1_0 tau^a2_{k-1}>
    auto R = [&](int j, int k) -> Rational {
        const SBlock& sj = smatrix(j);
        const SBlock& sk = smatrix(k);
        return sj[a1][0] * sk[a2][1] + sj[a1][1] * sk[a2][0];
    };
    // G(j,k) = R(j, k+1) - G(j-1, k+1), G(0,k) = (S_{k+1})_{a2}^{1-a1}.
    Rational v = 0;
    int sign = 1;
    for (int i = 0; i < b1; ++i, sign = -sign) v += sign * R(b1 - i, b2 + 1 + i);
    v += sign * smatrix(b2 + b1 + 1)[a2][1 - a1];
    return v;
}

Rational gw02(int b1, int a1, int b2, int a2) {
    Rational v = gw02_raw(b1, a1, b2, a2);
    if ((b1 + a1 + b2 + a2) % 2 != 0 && !is_zero(v))
        throw std::logic_error("gw02: nonzero value at non-integer degree");
    return v;
}

EtaForm eta(int k, int alpha) {
    if (k < 0) throw DomainError("eta: k must be >= 0");
    EtaForm e;
    if (alpha == 1) {
        RatFun F;
        for (int b = 0; 2 * b <= k; ++b) {
            const int c = k - 2 * b;
            F += RatFun(1 / (2 * fact(b) * fact(k + 1 - b))) * (z_pow(c + 1) - z_pow(-(c + 1)));
        }
        e.rational = RatForm::function(F).d();
        e.log_coeff = RatFun();
        return e;
    }
    if (alpha != 0) throw DomainError("eta: alpha must be 0 or 1");
    RatFun G;
    for (int b = 0; 2 * b <= k - 1; ++b) {
        const int c = k - 1 - 2 * b;
        G += RatFun(harmonic(k - b) / (fact(b) * fact(k - b))) * (z_pow(c + 1) - z_pow(-(c + 1)));
    }
    e.rational = Rational(-1) * RatForm::function(G).d();
    e.log_coeff = x_function().pow(k) * RatFun(1 / fact(k));
    return e;
}

EtaForm lower(const EtaForm& e) {
    RatFun xp = dx_form().coeff();
    RatFun phi = e.log_coeff;
    EtaForm out;
    out.rational = gwp1::lower(e.rational);
    if (!phi.is_zero()) {
        out.rational -= RatForm::function(phi / (RatFun::z() * xp)).d();
        out.log_coeff = -(phi.derivative() / xp);
    }
    return out;
}

Rational I_on_eta(int kind, int b, const EtaForm& e) {
    check_kind(kind);
    EtaForm cur = e;
    for (int n = 0; n < 64; ++n) {
        const RatFun& f = cur.rational.coeff();
        bool done = cur.log_coeff.is_zero() &&
                    (f.is_zero() || (f.order_at_infinity() >= 2 && f.den().valuation() == 0));
        if (done) return f.is_zero() ? Rational(0) : I_basis(kind, b + n, decompose_odd_form(cur.rational));
        cur = lower(cur);
    }
    throw PrecisionError("I_on_eta: singular part at 0 and infinity did not clear");
}

Rational gw02_eta(int b1, int a1, int b2, int a2) { return I_on_eta(a2, b2, eta(b1, a1)); }

Rational L_series(int m) {
    if (m < 0) return 0;
    std::vector<Rational> u(m + 1), one(m + 1);
    if (m >= 1) u[1] = -4;
    one[0] = 1;
    LocalSeries U = LocalSeries::formal(u), One = LocalSeries::formal(one);
    LocalSeries s = pow1p(U, Rational(1, 2));
    LocalSeries v = (s - One) * Rational(1, 2);
    LocalSeries L = pow1p(U, Rational(-3, 2)) * (-log1p(v));
    return L.coeff(m);
}

Rational L_direct(int m) {
    Rational acc = 0;
    for (int a = 0; a <= m; ++a)
        acc += (a + 1) * fact(2 * m + 2) / (fact(m - a) * fact(m + 2 + a)) *
               (harmonic(2 * m + 2) - harmonic(m + 2 + a));
    return acc;
}

Rational K_sum(int m) {
    Rational acc = 0;
    for (int a = 0; a <= m; ++a) acc += (a + 1) * fact(2 * m + 2) / (fact(m - a) * fact(m + 2 + a));
    return acc;
}

Rational K_closed(int m) { return fact(2 * m + 1) / (fact(m) * fact(m)); }

Rational L_printed_closed_form(int m) {
    Rational p4 = 1;
    for (int i = 0; i < m; ++i) p4 *= 4;
    return -p4 + K_closed(m) * (harmonic(2 * m + 1) - harmonic(m + 1));
}

LogPairing residue_log_pairing(const RatForm& f) {
    if (!f.is_form()) throw DomainError("residue_log_pairing needs a 1-form");
    LogPairing out;
    for (int a : {1, -1}) {
        Point c = Point::at(a);
        const int lo = std::min(valuation_at(f, c), 0);
        const int H = -lo + 4;
        LocalSeries fs = series_at(f, c, lo, H);
        LocalSeries t = LocalSeries::variable(c, H);
        // ln z = log1p(t) at +1 and ln(-1) + log1p(-t) at -1.
        LocalSeries lnz = log1p(t * Rational(a));
        LocalSeries tt_over_z = t * t * series_at(RatFun(Poly(1), Poly::z()), Rational(a), 0, H);
        LocalSeries pw(c, 0, H);
        pw.set(0, 1);
        RatFun x1_minus = RatFun::z() - RatFun(Rational(2 * a));
        for (int j = 0; 2 * j < -lo; ++j) {
            RatFun den = x1_minus.pow(j + 1);
            LocalSeries base = fs * pw;
            Rational r = residue(base * lnz);
            if (!is_zero(r)) out.rational += RatFun(r) / den;
            if (a == -1) {
                Rational br = residue(base);
                if (!is_zero(br)) out.branch += RatFun(br) / den;
            }
            pw = pw * tt_over_z;
        }
    }
    return out;
}

CheckReport lan_expansion_check(int beta, int depth) {
    if (beta != 0 && beta != 1) throw DomainError("lan_expansion_check: beta must be 0 or 1");
    if (depth < 1) throw DomainError("lan_expansion_check: depth must be >= 1");
    RatForm f = xi(beta, 0);
    LogPairing A = residue_log_pairing(f);
    if (!A.branch.is_zero()) return {false, "branch part " + A.branch.str("x")};
    const int top = depth + 2;  // exponents of 1/x1 up to top

    // A at x1 = infinity in s = 1/x1.
    LocalSeries As = series_at(A.rational.at_inverse(), Rational(0), 0, top);

    // 2 (f/dx) ln(x/z) from L(t): 4 L(s^2) s^3 for beta = 0, 2 L(s^2) s^2 for beta = 1.
    std::vector<Rational> lcoef(top + 1);
    for (int m = 0; 2 * m + 3 - beta <= top; ++m) lcoef[2 * m + 3 - beta] = Rational(beta == 0 ? 4 : 2) * L_series(m);
    LocalSeries Ls = LocalSeries::formal(lcoef);

    // Same term by reversion: w = 1/z, s = w/(1+w^2).
    {
        std::vector<Rational> sw(top + 1);
        for (int i = 0; 2 * i + 1 <= top; ++i) sw[2 * i + 1] = i % 2 ? -1 : 1;
        LocalSeries w_of_s = revert(LocalSeries::formal(sw));
        RatFun fdx = f.coeff() / dx_form().coeff();
        LocalSeries fw = series_at(fdx.at_inverse(), Rational(0), 0, top);
        LocalSeries lw = log1p(w_of_s * w_of_s);
        LocalSeries direct = compose(fw, w_of_s) * lw * Rational(2);
        for (int e = 0; e <= top; ++e) {
            if (direct.coeff(e) != Ls.coeff(e)) {
                std::ostringstream os;
                os << "log term at s^" << e << ": reversion " << to_string(direct.coeff(e)) << " vs L-series "
                   << to_string(Ls.coeff(e));
                return {false, os.str()};
            }
        }
    }

    for (int b = -1; b <= depth; ++b) {
        const int e = b + 2;
        Rational lhs = As.coeff(e) + Ls.coeff(e);
        Rational rhs = fact(b + 1) * (2 * harmonic(b + 1) * I_basis(1, b, XiIndex{0, beta}) +
                                      I_basis(0, b + 1, XiIndex{0, beta}));
        if (lhs != rhs) {
            std::ostringstream os;
            os << "beta=" << beta << " coefficient of x^-" << e << ": expansion " << to_string(lhs) << " vs table "
               << to_string(rhs);
            return {false, os.str()};
        }
    }
    return {true, "beta=" + std::to_string(beta) + ": " + std::to_string(depth + 2) + " coefficients agree"};
}

RatForm odd_bergman_slice(const Rational& w) {
    RatFun z = RatFun::z();
    RatFun d1 = z - RatFun(w);
    RatFun d2 = RatFun(1) - z * RatFun(w);
    return RatForm::one_form(RatFun(Rational(1, 2)) * (RatFun(1) / (d1 * d1) + RatFun(1) / (d2 * d2)));
}

LTransform l_transform_decompose(const XiIndex& idx, int n_cap) {
    if (idx.k < 0) throw DomainError("l_transform_decompose: k must be >= 0");
    if (n_cap < 1) throw DomainError("l_transform_decompose: cap must be >= 1");
    const RatForm f = xi(idx);
    const RatFun xf = x_function();
    const RatFun xp = dx_form().coeff();
    const RatFun phi = f.coeff() / xp;  // f/dx
    const int fit = 2 * n_cap + 1, extra = 3;

    std::vector<Rational> xs;
    std::vector<XiDecomposition> samples;
    for (int i = 0; i < fit + extra; ++i) {
        Rational p = i + 2;
        Rational x1 = xf(p), xp1 = xp(p);
        RatForm t1 = (2 * f.coeff()(p) / (xp1 * xp1)) * odd_bergman_slice(p);
        RatForm t2 = RatForm::function(phi / (RatFun(x1) - xf)).d();
        RatForm L = t1 - t2;
        // Removable poles at z2 = p, 1/p: decompose_odd_form rejects any other pole.
        XiDecomposition d = decompose_odd_form(L);
        for (int a : {1, -1})
            if (!is_zero(residue_at(L, Point::at(a))))
                throw DomainError("l_transform_decompose: residue at z2 = " + std::to_string(a));
        xs.push_back(x1);
        samples.push_back(std::move(d));
    }

    std::map<XiIndex, bool> keys;
    for (const auto& d : samples)
        for (const auto& [k, v] : d) keys[k] = true;

    const Poly q = Poly{Rational(-4), Rational(0), Rational(1)}.pow(n_cap);
    LTransform out;
    int excess = -2 * n_cap - 1;
    for (const auto& [key, _] : keys) {
        std::vector<Rational> ys;
        for (int i = 0; i < fit + extra; ++i) {
            auto it = samples[i].find(key);
            Rational c = it == samples[i].end() ? Rational(0) : it->second;
            ys.push_back(c * q(xs[i]));
        }
        Poly P = interpolate(std::vector<Rational>(xs.begin(), xs.begin() + fit),
                             std::vector<Rational>(ys.begin(), ys.begin() + fit));
        for (int i = fit; i < fit + extra; ++i)
            if (P(xs[i]) != ys[i])
                throw DomainError("l_transform_decompose: coefficient of xi" + key.str() +
                                  " is not P/(x^2-4)^N with N <= cap");
        RatFun c(P, q);
        if (c.is_zero()) continue;
        // Power of (x^2-4) needed to clear c.
        int N = 0;
        Poly den = c.den();
        for (const Poly& lin : {Poly{Rational(-2), Rational(1)}, Poly{Rational(2), Rational(1)}}) {
            int m = 0;
            Poly dd = den;
            while (dd.degree() > 0) {
                auto [qq, r] = divmod(dd, lin);
                if (!r.is_zero()) break;
                dd = qq;
                ++m;
            }
            N = std::max(N, m);
        }
        out.N = std::max(out.N, N);
        excess = std::max(excess, c.num().degree() - c.den().degree());
        out.coeffs[key] = c;
    }
    // Numerator degree once every coefficient is written over (x^2 - 4)^N.
    out.max_num_deg = out.coeffs.empty() ? 0 : 2 * out.N + excess;
    return out;
}

std::pair<Rational, Rational> appendix_pairing(int b, const Rational& x0) {
    if (b < 0) throw DomainError("appendix_pairing: b must be >= 0");
    if (is_zero(x0)) throw DomainError("appendix_pairing: x0 must be off the imaginary axis");
    if (b == 0) return {2 / x0, Rational(0)};
    Rational p = 1;
    for (int i = 0; i < b - 1; ++i) p *= x0;
    return {2 * p / fact(b) * (1 - b * harmonic(b)), p / fact(b - 1)};
}

RatForm appendix_form(const Rational& x0) {
    RatFun d = x_function() - RatFun(x0);
    return RatForm::one_form(dx_form().coeff() / (d * d));
}

}  // namespace gwp1

#include <sstream>

#include "gwp1/functionals.hpp"
#include "gwp1/recursion.hpp"

namespace gwp1 {

namespace {

std::shared_ptr<const XiTensor> target(Engine& e, int g, int n, const XiTensor* override_tensor) {
    if (override_tensor) return std::shared_ptr<const XiTensor>(override_tensor, [](const XiTensor*) {});
    return e.correlator(g, n);
}

RatForm bergman_slice(const Rational& p) {
    RatFun z = RatFun::z();
    RatFun d = z - RatFun(p);
    return RatForm::one_form(RatFun(1) / (d * d));
}

// Slice of omega_{g,n}(z, pts) in its first slot, including omega_{0,2}.
RatForm slice(Engine& e, int g, int n, const std::vector<Rational>& pts, const XiTensor* override_tensor,
              int og, int on) {
    if (g == 0 && n == 2) return bergman_slice(pts.at(0));
    if (g == og && n == on && override_tensor) return realize(*override_tensor, 0, pts);
    return realize(*e.correlator(g, n), 0, pts);
}

}  // namespace

LoopReport check_linear_loop(Engine& e, int g, int n, const XiTensor* override_tensor) {
    auto T = target(e, g, n, override_tensor);
    auto pts = default_points(n - 1);
    for (int s = 0; s < n; ++s) {
        RatForm f = realize(*T, s, pts);
        if (!is_odd(f)) {
            return {false, "slot " + std::to_string(s) + ": f + sigma^* f = " + (f + f.pullback_inverse()).str()};
        }
    }
    return {true, "all " + std::to_string(n) + " slices odd"};
}

LoopReport check_linear_loop_bergman() {
    RatFun z = RatFun::z();
    RatFun x = x_function();
    RatFun dxz = dx_form().coeff();
    for (const Rational& w : {Rational(2), Rational(3), Rational(-5, 7), Rational(11, 3)}) {
        RatForm B = bergman_slice(w);
        RatForm lhs = B + B.pullback_inverse();
        Rational xw = w + 1 / w, dxw = 1 - 1 / (w * w);
        RatFun diff = x - RatFun(xw);
        RatForm rhs = RatForm::one_form(dxz * RatFun(dxw) / (diff * diff));
        if (!(lhs == rhs)) return {false, "w = " + to_string(w) + ": " + (lhs - rhs).str()};
    }
    return {true, "B(z,w) + B(1/z,w) = dx dx/(x - x)^2 at four points"};
}

LoopReport check_quadratic_loop(Engine& e, int g, int n, const XiTensor* override_tensor) {
    if (!is_stable(g, n)) throw DomainError("quadratic loop check needs a stable (g,n)");
    auto pts = default_points(n - 1);
    const int nr = n - 1;
    const int H = 8 * max_k(g, n) + 24;
    RatFun zz = RatFun::z();
    RatForm dz_over_dx_sq = RatForm::function(RatFun(1) / (dx_form().coeff() * dx_form().coeff()));

    for (int a : {1, -1}) {
        Point c = Point::at(a);
        auto ser = [&](const RatForm& f) { return series_at(f, c, H); };
        LocalSeries Q(c, 0, H);

        // omega_{g-1,n+1}(z, sigma z, z_I)
        if (g >= 1) {
            if (g == 1 && n == 1) {
                RatFun d = zz * zz - RatFun(1);
                Q += ser(RatForm::function(RatFun(-1) / (d * d)));
            } else {
                auto T = e.correlator(g - 1, n + 1);
                int dim = T->dim();
                std::vector<std::vector<Rational>> val(nr, std::vector<Rational>(dim));
                for (int i = 0; i < nr; ++i)
                    for (int cc = 0; cc < dim; ++cc) val[i][cc] = xi(slot_index(cc)).coeff()(pts[i]);
                std::map<std::pair<int, int>, Rational> C;
                for (std::size_t f = 0; f < T->size(); ++f) {
                    if (is_zero((*T)[f])) continue;
                    auto cs = T->codes_of(f);
                    Rational w = (*T)[f];
                    for (int i = 0; i < nr; ++i) w *= val[i][cs[i + 2]];
                    C[{cs[0], cs[1]}] += w;
                }
                for (const auto& [ij, w] : C) {
                    if (is_zero(w)) continue;
                    RatForm xi_i = xi(slot_index(ij.first)), xi_j = xi(slot_index(ij.second));
                    Q += (ser(xi_i) * ser(xi_j.pullback_inverse())) * w;
                }
            }
        }

        // Ordered splits, omega_{0,1} excluded.
        for (unsigned mask = 0; mask < (1u << nr); ++mask) {
            std::vector<Rational> pJ, pJc;
            for (int p = 0; p < nr; ++p) (mask >> p & 1u ? pJ : pJc).push_back(pts[p]);
            for (int h = 0; h <= g; ++h) {
                int n1 = 1 + static_cast<int>(pJ.size()), n2 = 1 + static_cast<int>(pJc.size());
                bool ok1 = is_stable(h, n1) || (h == 0 && n1 == 2);
                bool ok2 = is_stable(g - h, n2) || (g - h == 0 && n2 == 2);
                if (!ok1 || !ok2) continue;
                RatForm F1 = slice(e, h, n1, pJ, override_tensor, g, n);
                RatForm F2 = slice(e, g - h, n2, pJc, override_tensor, g, n);
                Q += ser(F1) * ser(F2.pullback_inverse());
            }
        }

        // omega_{0,1} terms: (y(z) - y(sigma z)) dx(z) omega_{g,n}(z, z_I).
        RatForm W = slice(e, g, n, pts, override_tensor, g, n);
        Q += y_diff_series(a, 1, H) * ser(RatForm::function(dx_form().coeff())) * ser(W);

        LocalSeries q = Q * ser(dz_over_dx_sq);
        LocalSeries pp = q.principal_part();
        if (!pp.is_zero_on_window()) {
            std::ostringstream os;
            os << "principal part at z = " << a << ": " << pp.str();
            return {false, os.str()};
        }
    }
    return {true, "q_{g,n} holomorphic at +1 and -1"};
}

LoopReport stationary_expansion_check(Engine& e, int g, int n, int depth) {
    auto T = e.correlator(g, n);
    const int dim = T->dim();
    // Slot-wise I^1 values from the closed table and from the expansion at infinity.
    std::vector<std::vector<Rational>> table(depth + 1, std::vector<Rational>(dim));
    std::vector<std::vector<Rational>> expand(depth + 1, std::vector<Rational>(dim));
    for (int c = 0; c < dim; ++c) {
        auto coeffs = expand_at_infinity_in_x(xi(slot_index(c)), depth);
        for (int b = 0; b <= depth; ++b) {
            table[b][c] = I_basis(1, b, slot_index(c));
            expand[b][c] = coeffs[b];
        }
    }
    std::vector<int> bs(n, 0);
    long checked = 0;
    while (true) {
        Rational lhs = 0, rhs = 0;
        for (std::size_t f = 0; f < T->size(); ++f) {
            if (is_zero((*T)[f])) continue;
            auto cs = T->codes_of(f);
            Rational l = (*T)[f], r = (*T)[f];
            for (int i = 0; i < n; ++i) {
                l *= table[bs[i]][cs[i]];
                r *= expand[bs[i]][cs[i]];
            }
            lhs += l;
            rhs += r;
        }
        if (lhs != rhs) {
            std::string b;
            for (int x : bs) b += std::to_string(x) + " ";
            return {false, "b = " + b + ": table " + to_string(lhs) + " vs expansion " + to_string(rhs)};
        }
        ++checked;
        int i = 0;
        while (i < n && bs[i] == depth) bs[i++] = 0;
        if (i == n) break;
        ++bs[i];
    }
    return {true, std::to_string(checked) + " stationary coefficients agree"};
}

}  // namespace gwp1

#pragma once

#include <compare>
#include <map>
#include <string>

#include "gwp1/poly.hpp"
#include "gwp1/series.hpp"

namespace gwp1 {

// Basis label (k, alpha). k = -1 is reserved for the seeds; inside an
// XiDecomposition it denotes the odd seed (x/2)^{1-alpha} dz/z.
struct XiIndex {
    int k = 0;
    int alpha = 0;
    auto operator<=>(const XiIndex&) const = default;
    std::string str() const { return "(" + std::to_string(k) + "," + std::to_string(alpha) + ")"; }
};

using XiDecomposition = std::map<XiIndex, Rational>;

// x = z + 1/z as a function.
RatFun x_function();
// dx = (1 - z^-2) dz.
RatForm dx_form();

// xi^alpha_k; for k = -1 the raw seed z^{-alpha} dz.
RatForm xi(const XiIndex& idx);
RatForm xi(int alpha, int k);
// (x/2)^{1-alpha} dz/z.
RatForm xi_odd_seed(int alpha);
// xi for k >= 0, odd seed for k = -1.
RatForm basis_form(const XiIndex& idx);

// -d(f/dx).
RatForm lower(const RatForm& f);

// Expansion of xi^alpha_k / dz at a = +-1, window [-(2k+2), hi].
LocalSeries xi_series(const XiIndex& idx, int a, int hi);
// Coefficient of t^{-(2k+2)} in xi_series.
Rational xi_leading(const XiIndex& idx, int a);

// x * xi^alpha_m = 2 xi^{1-alpha}_m + (m + alpha) xi^alpha_{m-1}.
XiDecomposition x_action(const XiIndex& idx);

RatForm odd_part(const RatForm& f);
bool is_odd(const RatForm& f);

// Solve for the xi-combination with the given principal parts at +1 and -1
// (series of f/dz, windows must reach -1). Throws DomainError if the principal
// parts are not those of an element of the span.
XiDecomposition decompose_principal(const LocalSeries& at_plus, const LocalSeries& at_minus);

// Requires f odd, poles only at +-1, f = O(z^-2) dz at infinity.
XiDecomposition decompose_odd_form(const RatForm& f);

RatForm reconstruct(const XiDecomposition& d);

// y(z) - y(1/z) at a = +-1 in t = z - a: 2 ln(1 + a t).
LocalSeries y_diff_series(int a, int lo, int hi);

void add_into(XiDecomposition& acc, const XiDecomposition& d, const Rational& scale = 1);
std::string to_string(const XiDecomposition& d);

}  // namespace gwp1

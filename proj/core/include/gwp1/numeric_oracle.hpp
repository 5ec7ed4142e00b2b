#pragma once

#include <complex>
#include <string>
#include <vector>

#include "gwp1/poly.hpp"

namespace gwp1 {

// Floating point is confined to this header and its source file.
struct OracleOptions {
    // epsilon schedule for the regularized limit
    std::vector<double> eps = {4e-3, 2e-3, 1e-3, 5e-4, 2.5e-4, 1.25e-4, 6.25e-5, 3.125e-5};
    // relative tolerance handed to the quadrature
    double quad_tol = 1e-13;
};

struct OracleResult {
    std::complex<double> value;
    // spread between fits of different order; a rough error bar
    double error = 0;
    bool converged = false;
    std::string detail;
};

// I^0_b[f] from its defining limit: quadrature along the imaginary x-axis for
// each epsilon, then a fit I + sum_{k=1,2} (c_k eps^k ln eps + d_k eps^k).
// f must have no poles on the imaginary z-axis, at 0, or at infinity.
OracleResult I0_numeric_oracle(int b, const RatForm& f, const OracleOptions& opt = {});

// -int x^b/b! f along z = i s, s from 0 to infinity.
OracleResult contour_integral(int b, const RatForm& f, double quad_tol = 1e-13);

}  // namespace gwp1

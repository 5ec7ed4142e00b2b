#include "gwp1/numeric_oracle.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "gwp1/functionals.hpp"
#include "gwp1/series.hpp"

namespace gwp1 {

namespace {

using cd = std::complex<double>;

std::vector<double> to_double(const Poly& p) {
    std::vector<double> out;
    for (const auto& c : p.coeffs()) out.push_back(c.get_d());
    return out;
}

cd horner(const std::vector<double>& c, cd z) {
    cd acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

struct ComplexRatFun {
    explicit ComplexRatFun(const RatFun& f) : num(to_double(f.num())), den(to_double(f.den())) {}
    cd operator()(cd z) const { return horner(num, z) / horner(den, z); }
    std::vector<double> num, den;
};

// Integrate a complex function of y over [lo, hi] (hi may be infinite).
cd integrate(const std::function<cd(double)>& g, double lo, double hi, double tol, double& err) {
    using boost::math::quadrature::gauss_kronrod;
    double e = 0;
    cd v = gauss_kronrod<double, 31>::integrate(g, lo, hi, 12, tol, &e);
    err += e;
    return v;
}

// Inverse of x on the imaginary axis with |Z| >= 1: x in iR+ runs over z from i
// to i*inf and x in iR- over z from -i to -i*inf, so both ends sit at z = inf
// where the subtracted I^1 terms match the expansion of f.
cd Z_of_iY(double Y) {
    const double r = std::sqrt(Y * Y + 4);
    return cd(0, (Y + (Y >= 0 ? r : -r)) / 2);
}

constexpr double kTailRadius = 6.0;
constexpr int kTailTerms = 80;

}  // namespace

OracleResult I0_numeric_oracle(int b, const RatForm& f, const OracleOptions& opt) {
    if (!f.is_form()) throw DomainError("I0_numeric_oracle needs a 1-form");
    if (b < 0) throw DomainError("I0_numeric_oracle: b must be >= 0");
    ComplexRatFun fhat(f.coeff());

    // C_a = (a+1)! I^1_a[f]: f = sum_a C_a dx/x^{a+2} at x = infinity.
    std::vector<Rational> cs = expand_at_infinity_in_x(f, b + kTailTerms);
    std::vector<double> C;
    for (int a = 0; a < static_cast<int>(cs.size()); ++a) C.push_back(Rational(factorial(a + 1) * cs[a]).get_d());
    const double lncoef = b >= 1 ? 2 * I1(b - 1, f).get_d() : 0.0;
    const double bfact = factorial(b).get_d();

    // R_b[f](x)/dx at x = iY.
    auto F = [&](double Y) -> cd {
        cd x(0, Y);
        if (std::abs(Y) > kTailRadius) {
            cd acc = 0, xp = std::pow(x, -(b + 2));
            for (int a = b; a < static_cast<int>(C.size()); ++a) {
                acc += C[a] * xp;
                xp /= x;
            }
            return acc;
        }
        cd z = Z_of_iY(Y);
        cd v = fhat(z) / (1.0 - 1.0 / (z * z));
        cd xp = 1.0 / (x * x);
        for (int a = 0; a < b; ++a) {
            v -= C[a] * xp;
            xp /= x;
        }
        return v;
    };

    double qerr = 0;
    std::vector<cd> V;
    for (double eps : opt.eps) {
        // Breakpoints resolve the scale eps near the origin.
        std::vector<double> bp{0.0};
        for (double s = eps; s < 1.0; s *= 8) bp.push_back(s);
        bp.push_back(1.0);
        bp.push_back(kTailRadius);
        cd Jp = 0, Jm = 0;
        for (int side : {1, -1}) {
            // side = +1: x = i(y + eps) above; side = -1: x = -i(y + eps) below.
            auto g = [&](double y) -> cd {
                cd xy(0, side * y);
                return std::pow(xy, b) / bfact * F(side * (y + eps)) * cd(0, side);
            };
            cd acc = 0;
            for (std::size_t i = 0; i + 1 < bp.size(); ++i) acc += integrate(g, bp[i], bp[i + 1], opt.quad_tol, qerr);
            acc += integrate(g, kTailRadius, std::numeric_limits<double>::infinity(), opt.quad_tol, qerr);
            (side == 1 ? Jp : Jm) = acc;
        }
        V.push_back(lncoef * std::log(eps) - Jp - Jm);
    }

    // Least-squares fits in eps; the spread between two model orders is the error bar.
    auto fit = [&](int nbasis, std::size_t first) {
        const int rows = static_cast<int>(opt.eps.size() - first);
        Eigen::MatrixXd A(rows, nbasis);
        Eigen::MatrixXcd y(rows, 1);
        for (int r = 0; r < rows; ++r) {
            double e = opt.eps[first + r], l = std::log(e);
            double basis[5] = {1.0, e * l, e, e * e * l, e * e};
            for (int c = 0; c < nbasis; ++c) A(r, c) = basis[c];
            y(r, 0) = V[first + r];
        }
        Eigen::MatrixXcd sol = A.cast<cd>().colPivHouseholderQr().solve(y);
        return sol(0, 0);
    };
    OracleResult out;
    if (opt.eps.size() < 6) throw DomainError("I0_numeric_oracle: need at least six epsilon values");
    cd hi = fit(5, 0);
    cd lo = fit(3, opt.eps.size() - 4);
    out.value = hi;
    out.error = std::abs(hi - lo) + qerr;
    out.converged = std::isfinite(out.value.real()) && std::isfinite(out.value.imag());
    std::ostringstream os;
    os << "b=" << b << " value " << hi.real() << (hi.imag() < 0 ? "-" : "+") << std::abs(hi.imag()) << "i, error "
       << out.error;
    out.detail = os.str();
    return out;
}

OracleResult contour_integral(int b, const RatForm& f, double quad_tol) {
    if (!f.is_form()) throw DomainError("contour_integral needs a 1-form");
    ComplexRatFun fhat(f.coeff());
    const double bfact = factorial(b).get_d();
    auto g = [&](double s) -> cd {
        cd z(0, s);
        cd x = z + 1.0 / z;
        return -std::pow(x, b) / bfact * fhat(z) * cd(0, 1);
    };
    double err = 0;
    cd v = integrate(g, 0.0, 1.0, quad_tol, err) + integrate(g, 1.0, std::numeric_limits<double>::infinity(), quad_tol, err);
    OracleResult out;
    out.value = v;
    out.error = err;
    out.converged = std::isfinite(v.real()) && std::isfinite(v.imag());
    std::ostringstream os;
    os << "contour value " << v.real() << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
    out.detail = os.str();
    return out;
}

}  // namespace gwp1

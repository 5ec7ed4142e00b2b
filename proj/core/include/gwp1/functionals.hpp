#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "gwp1/curve.hpp"
#include "gwp1/recursion.hpp"
#include "gwp1/tensor.hpp"

namespace gwp1 {

// I^1_b[f] = -Res_{z=inf} x^{b+1}/(b+1)! f. Zero for b < 0.
Rational I1(int b, const RatForm& f);

// I^kind_b on the basis: shift to xi_0 and read the closed table. idx.k = -1
// is the odd seed, for which I_b[seed] = I_{b+1}[xi_0]. Negative shifted
// indices give 0.
Rational I_basis(int kind, int b, const XiIndex& idx);
Rational I_basis(int kind, int b, const XiDecomposition& d);

// I^beta_j(x^k/k! xi^alpha_m) through the x-action formula.
Rational I_xmul(int beta, int j, int k, const XiIndex& idx);
// Same quantity by expanding x^k xi^alpha_m with x_action and applying I_basis.
Rational I_xmul_expanded(int beta, int j, int k, const XiIndex& idx);

// (S_k)_alpha^beta stored as S[alpha][beta].
using SBlock = std::array<std::array<Rational, 2>, 2>;
// From the degree recursion seeded by S_0 = 1, (S_1)_0^1 = 0. Memoized.
const SBlock& smatrix(int k);

// sum over codes of T[c_1..c_n] * prod_i w[i][c_i]; slot-by-slot contraction.
Rational contract_slots(const XiTensor& t, const std::vector<std::vector<Rational>>& w);

struct Insertion {
    int b = 0;
    int alpha = 0;
    auto operator<=>(const Insertion&) const = default;
};

// d = (sum(b_i + alpha_i) - (2g - 2) - n)/2.
Rational degree_of(int g, const std::vector<Insertion>& ins);

// <prod tau^{alpha_i}_{b_i}>_g. Stable cases contract the correlator against
// I_basis; (0,1) and (0,2) go through gw01 and gw02.
Rational descendants(Engine& e, int g, const std::vector<Insertion>& ins);
// Same evaluation with no degree shortcut: always runs the pipeline.
Rational descendants_raw(Engine& e, int g, const std::vector<Insertion>& ins);

// <tau^alpha_b>_0 from the closed table.
Rational gw01(int b, int alpha);
// <tau^alpha_b>_0 as I^alpha_{b+1}[dz/z].
Rational gw01_pipeline(int b, int alpha);

// <tau^a1_b1 tau^a2_b2>_0 from the string/TRR recursion seeded by S.
Rational gw02(int b1, int a1, int b2, int a2);
// The recursion without the parity guard.
Rational gw02_raw(int b1, int a1, int b2, int a2);
// Same value as I^a2_b2[eta^a1_b1].
Rational gw02_eta(int b1, int a1, int b2, int a2);

// eta = rational + d(log_coeff * l), l = (ln z - ln(1/z))/2.
struct EtaForm {
    RatForm rational;
    RatFun log_coeff;
};
EtaForm eta(int k, int alpha);
// -d(eta/dx).
EtaForm lower(const EtaForm& e);
// I^kind_b on an eta form: lower until the log part is gone and no poles remain
// at 0 and infinity, then decompose in the xi basis.
Rational I_on_eta(int kind, int b, const EtaForm& e);

// Coefficients of L(t) = (1-4t)^{-3/2} ln(2/(1+sqrt(1-4t))) by series composition.
Rational L_series(int m);
// sum_a (a+1)(2m+2)!/((m-a)!(m+2+a)!) (H_{2m+2} - H_{m+2+a}).
Rational L_direct(int m);
// sum_a (a+1)(2m+2)!/((m-a)!(m+2+a)!).
Rational K_sum(int m);
// (2m+1)!/m!^2.
Rational K_closed(int m);
// -2^{2m} + (2m+1)!/m!^2 (H_{2m+1} - H_{m+1}); known not to match L_series.
Rational L_printed_closed_form(int m);

// Rational part plus coefficient of the branch constant ln(-1).
struct LogScalar {
    Rational rational;
    Rational branch;
    bool is_rational() const { return is_zero(branch); }
};

// A[f](x1) = sum_{a=+-1} Res_{z=a} f(z) ln z / (x1 - x(z)), as rational
// functions of x1 (variable printed as z).
struct LogPairing {
    RatFun rational;
    RatFun branch;
};
LogPairing residue_log_pairing(const RatForm& f);

struct CheckReport {
    bool pass = false;
    std::string detail;
};

// Expansion of A[xi^beta_0] at x1 = infinity against the I-table, b = -1..depth.
CheckReport lan_expansion_check(int beta, int depth);

// Decomposition of L[xi^alpha_m](z1, z2) in xi(z2); coefficients are rational
// functions of x1 (times dx1) with denominator a power of x1^2 - 4.
struct LTransform {
    std::map<XiIndex, RatFun> coeffs;
    int N = 0;            // largest power of (x1^2 - 4) in a denominator
    int max_num_deg = 0;  // largest numerator degree with every coefficient over (x1^2 - 4)^N
};
LTransform l_transform_decompose(const XiIndex& idx, int n_cap);

// I^0_b[dx/(x - x0)^2] = r + s ln(x0^2).
std::pair<Rational, Rational> appendix_pairing(int b, const Rational& x0);

// Pullback of dx/(x - x0)^2 to the z-plane.
RatForm appendix_form(const Rational& x0);
// omega^odd_{0,2}(z, w)/(dz dw) at fixed w, as a form in z.
RatForm odd_bergman_slice(const Rational& w);

}  // namespace gwp1

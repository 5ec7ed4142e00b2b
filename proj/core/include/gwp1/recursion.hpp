#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gwp1/curve.hpp"
#include "gwp1/series.hpp"
#include "gwp1/tensor.hpp"

namespace gwp1 {

struct RecursionBudget {
    // Largest 2g - 2 + n the engine may compute.
    int chi_max = 6;
    // Worker threads for the inner sums; results do not depend on it.
    int threads = 1;
};

struct BudgetExhausted : std::runtime_error {
    BudgetExhausted(int g_, int n_, int cap)
        : std::runtime_error("budget exhausted at (g,n) = (" + std::to_string(g_) + "," + std::to_string(n_) +
                             "): 2g-2+n exceeds " + std::to_string(cap)),
          g(g_),
          n(n_) {}
    int g, n;
};

// Sparse vector over slot codes, sorted by code.
using SparseVec = std::vector<std::pair<int, Rational>>;

inline bool is_stable(int g, int n) { return g >= 0 && n >= 1 && 2 * g - 2 + n > 0; }
// Largest k per slot in a stable correlator: 3g - 3 + n.
inline int max_k(int g, int n) { return 3 * g - 3 + n; }

// Topological recursion for x = z + 1/z, dy = dz/z, B = dz1 dz2/(z1-z2)^2.
// Correlators are XiTensors in the xi basis; memoized per (g,n).
class Engine {
public:
    explicit Engine(RecursionBudget budget = {});

    const RecursionBudget& budget() const { return budget_; }

    std::shared_ptr<const XiTensor> correlator(int g, int n);
    bool cached(int g, int n) const;
    // Seed the memo (cache load). The tensor is checked for shape and symmetry.
    void inject(int g, int n, XiTensor t);

    // Res_{z=a} K(z1, z) q(z) dz^2, decomposed in z1. payload is q at a and must
    // be known through t^0.
    XiDecomposition kernel_residue(int a, const LocalSeries& payload);

    // z1-decomposition of the kernel against t^{-p} dz^2 at a.
    const SparseVec& kernel_column(int a, int p);
    // w-decomposition of [t^l] of omega^odd_{0,2}(a + t, w)/dt.
    const SparseVec& odd_bergman_column(int a, int l);
    // Kernel applied to xi_i(z) xi_j(z): z1-decomposition.
    const SparseVec& pair_kernel(int ci, int cj);
    // Kernel applied to omega^odd_{0,2}(z, w) xi_i(z): (z1-code, w-code) -> value.
    const std::vector<std::tuple<int, int, Rational>>& odd_pair_kernel(int ci);

private:
    std::shared_ptr<const XiTensor> compute(int g, int n);
    void warm_tables(int kmax_inner);

    RecursionBudget budget_;
    mutable std::mutex memo_mu_;
    std::map<std::pair<int, int>, std::shared_ptr<const XiTensor>> memo_;

    std::mutex table_mu_;
    std::map<std::pair<int, int>, std::unique_ptr<SparseVec>> ki_;
    std::map<std::pair<int, int>, std::unique_ptr<SparseVec>> ob_;
    std::map<std::pair<int, int>, std::unique_ptr<SparseVec>> pk_;
    std::map<int, std::unique_ptr<std::vector<std::tuple<int, int, Rational>>>> po_;
};

// Degree selection: sum(k_i + alpha_i) - n - (2g - 2) even and >= 0.
bool degree_allowed(int g, const std::vector<XiIndex>& idx);

// Evaluate all slots but `slot` at the given points (one per remaining slot, in
// slot order) and return the 1-form in the free slot.
RatForm realize(const XiTensor& t, int slot, const std::vector<Rational>& points);

struct LoopReport {
    bool pass = false;
    std::string detail;
};

// Default evaluation points 2, 3, 5, 7, ... (none reciprocal to another).
std::vector<Rational> default_points(int count);

LoopReport check_linear_loop(Engine& e, int g, int n, const XiTensor* override_tensor = nullptr);
LoopReport check_quadratic_loop(Engine& e, int g, int n, const XiTensor* override_tensor = nullptr);
// omega_{0,2} case of the linear loop equation, as an exact identity.
LoopReport check_linear_loop_bergman();

// All-stationary descendants: I^1 table contraction against the tensor versus
// coefficient extraction at x = infinity, for all b_i <= depth.
LoopReport stationary_expansion_check(Engine& e, int g, int n, int depth);

}  // namespace gwp1

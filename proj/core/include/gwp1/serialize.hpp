#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gwp1/recursion.hpp"
#include "gwp1/tensor.hpp"
#include "gwp1/virasoro.hpp"

namespace gwp1 {

// Bump when a change to the engine could alter stored correlators.
inline constexpr int kEngineVersion = 1;

struct StoredCorrelator {
    int g = 0;
    int n = 0;
    XiTensor tensor;
};

// {"g", "n", "entries": [{"idx": [[k, alpha], ...], "val": "p/q"}]}, entries sorted.
std::string tensor_to_json(int g, const XiTensor& t);
// Header k1,a1,...,kn,an,value, then one line per nonzero entry.
std::string tensor_to_csv(int g, const XiTensor& t);
// Inverse of tensor_to_json; the shape is (n, 3g - 3 + n).
StoredCorrelator tensor_from_json(const std::string& text);

// [{"k", "S": [[S00, S01], [S10, S11]]}] for k = 0..k_max.
std::string smatrix_to_json(int k_max);
std::string smatrix_to_csv(int k_max);

// [{"L", "g", "insertions": [[b, alpha], ...], "lhs", "rhs", "pass"}].
std::string virasoro_report_json(const std::vector<VirasoroCheck>& checks);
std::string virasoro_report_csv(const std::vector<VirasoroCheck>& checks);

// On-disk correlator cache keyed by (g, n, chi_max, engine version).
class CorrelatorCache {
public:
    explicit CorrelatorCache(std::string dir) : dir_(std::move(dir)) {}

    std::string path(int g, int n, const RecursionBudget& budget) const;
    // Injects a stored tensor into the engine; false if absent.
    bool load(Engine& e, int g, int n) const;
    void save(Engine& e, int g, int n) const;

private:
    std::string dir_;
};

}  // namespace gwp1

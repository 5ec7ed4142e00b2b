#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gwp1/curve.hpp"
#include "gwp1/rational.hpp"

namespace gwp1 {

// Per-slot code 2k + alpha; code order agrees with (k, alpha) lexicographic order.
inline int slot_code(const XiIndex& i) { return 2 * i.k + i.alpha; }
inline XiIndex slot_index(int code) { return {code / 2, code % 2}; }

// Dense n-slot coefficient array over xi^alpha_k, 0 <= k <= kmax.
class XiTensor {
public:
    XiTensor() = default;
    XiTensor(int n, int kmax);

    int n() const { return n_; }
    int kmax() const { return kmax_; }
    int dim() const { return 2 * (kmax_ + 1); }
    std::size_t size() const { return data_.size(); }

    // Flat position of a code tuple; slot 0 most significant.
    std::size_t flat(const std::vector<int>& codes) const;
    std::vector<int> codes_of(std::size_t flat) const;

    const Rational& operator[](std::size_t flat) const { return data_[flat]; }
    Rational& operator[](std::size_t flat) { return data_[flat]; }
    // Zero outside the stored range.
    Rational get(const std::vector<XiIndex>& idx) const;
    void set(const std::vector<XiIndex>& idx, const Rational& v);

    // Nonzero entries, lexicographically sorted.
    std::vector<std::pair<std::vector<XiIndex>, Rational>> entries() const;
    std::size_t nnz() const;

    bool is_symmetric() const;
    friend bool operator==(const XiTensor& a, const XiTensor& b) {
        return a.n_ == b.n_ && a.kmax_ == b.kmax_ && a.data_ == b.data_;
    }

private:
    int n_ = 0;
    int kmax_ = 0;
    std::vector<Rational> data_;
};

}  // namespace gwp1

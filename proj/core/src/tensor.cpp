#include "gwp1/tensor.hpp"

#include <algorithm>
#include <numeric>

namespace gwp1 {

XiTensor::XiTensor(int n, int kmax) : n_(n), kmax_(kmax) {
    if (n < 0 || kmax < 0) throw DomainError("XiTensor: negative shape");
    std::size_t sz = 1;
    for (int i = 0; i < n; ++i) sz *= static_cast<std::size_t>(dim());
    data_.resize(sz);
}

std::size_t XiTensor::flat(const std::vector<int>& codes) const {
    if (static_cast<int>(codes.size()) != n_) throw DomainError("XiTensor: wrong number of slots");
    std::size_t f = 0;
    for (int c : codes) {
        if (c < 0 || c >= dim()) throw DomainError("XiTensor: code out of range");
        f = f * dim() + c;
    }
    return f;
}

std::vector<int> XiTensor::codes_of(std::size_t f) const {
    std::vector<int> c(n_);
    for (int i = n_ - 1; i >= 0; --i) {
        c[i] = static_cast<int>(f % dim());
        f /= dim();
    }
    return c;
}

Rational XiTensor::get(const std::vector<XiIndex>& idx) const {
    std::vector<int> codes;
    for (const auto& i : idx) {
        if (i.k < 0 || i.k > kmax_) return 0;
        codes.push_back(slot_code(i));
    }
    return data_[flat(codes)];
}

void XiTensor::set(const std::vector<XiIndex>& idx, const Rational& v) {
    std::vector<int> codes;
    for (const auto& i : idx) codes.push_back(slot_code(i));
    data_[flat(codes)] = v;
}

std::vector<std::pair<std::vector<XiIndex>, Rational>> XiTensor::entries() const {
    std::vector<std::pair<std::vector<XiIndex>, Rational>> out;
    for (std::size_t f = 0; f < data_.size(); ++f) {
        if (is_zero(data_[f])) continue;
        std::vector<XiIndex> idx;
        for (int c : codes_of(f)) idx.push_back(slot_index(c));
        out.emplace_back(std::move(idx), data_[f]);
    }
    return out;
}

std::size_t XiTensor::nnz() const {
    return static_cast<std::size_t>(std::count_if(data_.begin(), data_.end(), [](const Rational& q) { return !is_zero(q); }));
}

bool XiTensor::is_symmetric() const {
    if (n_ < 2) return true;
    for (std::size_t f = 0; f < data_.size(); ++f) {
        auto c = codes_of(f);
        // Adjacent transpositions generate the symmetric group.
        for (int i = 0; i + 1 < n_; ++i) {
            if (c[i] <= c[i + 1]) continue;
            std::swap(c[i], c[i + 1]);
            bool eq = data_[flat(c)] == data_[f];
            std::swap(c[i], c[i + 1]);
            if (!eq) return false;
        }
    }
    return true;
}

}  // namespace gwp1

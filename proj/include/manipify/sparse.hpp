#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace manipify {

/// Sparse real vector; entries sorted by index, no duplicate indices.
struct SparseVector {
  std::vector<std::pair<std::uint32_t, double>> entries;

  double norm() const {
    double s = 0.0;
    for (const auto& [_, v] : entries) s += v * v;
    return std::sqrt(s);
  }

  double weight(std::uint32_t index) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), index,
                               [](const auto& e, std::uint32_t c) { return e.first < c; });
    return it != entries.end() && it->first == index ? it->second : 0.0;
  }

  bool empty() const { return entries.empty(); }

  friend bool operator==(const SparseVector&, const SparseVector&) = default;
};

}  // namespace manipify

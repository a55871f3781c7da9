#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "manipify/error.hpp"
#include "manipify/ml/dataset.hpp"
#include "manipify/random.hpp"

namespace manipify::ml {

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Stratified, seeded split of `labels` positions. The train side holds
/// floor(train_fraction * n) samples; each class contributes floor(fraction * n_c)
/// and the remaining slots go to the classes with the largest fractional
/// remainder (ties to the lowest class id).
inline SplitIndices stratified_split(const std::vector<int>& labels, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw Error(Errc::InvalidArgument, "train_fraction", std::nullopt, "must lie in (0, 1)");
  const std::size_t n = labels.size();
  const auto n_train = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n)));
  if (n_train == 0 || n_train == n)
    throw Error(Errc::TooFewSamples, "split", static_cast<std::int64_t>(n), "train or test side would be empty");

  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < n; ++i) by_class[labels[i]].push_back(i);

  Rng rng(seed);
  struct Quota {
    int label;
    std::size_t take;
    double remainder;
  };
  std::vector<Quota> quotas;
  std::size_t assigned = 0;
  for (auto& [label, members] : by_class) {
    rng.shuffle(members);
    const double exact = train_fraction * static_cast<double>(members.size());
    const auto take = static_cast<std::size_t>(std::floor(exact));
    quotas.push_back({label, take, exact - static_cast<double>(take)});
    assigned += take;
  }
  std::vector<std::size_t> order(quotas.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return quotas[a].remainder > quotas[b].remainder; });
  for (std::size_t k = 0; assigned < n_train; k = (k + 1) % order.size()) {
    Quota& q = quotas[order[k]];
    if (q.take < by_class[q.label].size()) {
      ++q.take;
      ++assigned;
    }
  }

  SplitIndices out;
  for (const auto& q : quotas) {
    const auto& members = by_class[q.label];
    out.train.insert(out.train.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(q.take));
    out.test.insert(out.test.end(), members.begin() + static_cast<std::ptrdiff_t>(q.take), members.end());
  }
  rng.shuffle(out.train);
  rng.shuffle(out.test);
  return out;
}

template <class Matrix>
std::pair<BasicDataset<Matrix>, BasicDataset<Matrix>> train_test_split(const BasicDataset<Matrix>& ds,
                                                                      double train_fraction, std::uint64_t seed) {
  ds.validate();
  const SplitIndices s = stratified_split(ds.y, train_fraction, seed);
  return {ds.select(s.train), ds.select(s.test)};
}

}  // namespace manipify::ml

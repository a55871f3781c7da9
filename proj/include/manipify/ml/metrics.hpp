#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "manipify/error.hpp"

namespace manipify::ml {

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::int64_t support = 0;  // true instances of the class
};

struct Metrics {
  std::vector<std::vector<std::int64_t>> confusion;  // [truth][prediction]
  std::vector<ClassMetrics> per_class;
  double accuracy = 0.0;

  std::size_t n_classes() const { return confusion.size(); }

  /// Unweighted mean F1 over classes that occur in the ground truth.
  double macro_f1() const {
    double sum = 0.0;
    int k = 0;
    for (const auto& c : per_class)
      if (c.support > 0) {
        sum += c.f1;
        ++k;
      }
    return k ? sum / k : 0.0;
  }

  nlohmann::json to_json(const std::vector<std::string>& class_names = {}) const {
    nlohmann::json classes = nlohmann::json::array();
    for (std::size_t c = 0; c < per_class.size(); ++c) {
      const auto& m = per_class[c];
      classes.push_back({{"class", c < class_names.size() ? class_names[c] : std::to_string(c)},
                         {"precision", m.precision},
                         {"recall", m.recall},
                         {"f1", m.f1},
                         {"support", m.support}});
    }
    return {{"accuracy", accuracy}, {"macro_f1", macro_f1()}, {"classes", std::move(classes)}, {"confusion", confusion}};
  }
};

namespace detail {

inline double ratio(std::int64_t num, std::int64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace detail

/// Per-class precision/recall/F1 from a confusion matrix. Zero denominators give 0.
inline Metrics metrics_from_confusion(std::vector<std::vector<std::int64_t>> confusion) {
  Metrics m;
  const std::size_t k = confusion.size();
  std::int64_t total = 0, correct = 0;
  m.per_class.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    std::int64_t tp = confusion[c][c], fp = 0, fn = 0;
    for (std::size_t o = 0; o < k; ++o) {
      total += confusion[c][o];
      if (o == c) continue;
      fp += confusion[o][c];
      fn += confusion[c][o];
    }
    correct += tp;
    auto& cm = m.per_class[c];
    cm.precision = detail::ratio(tp, tp + fp);
    cm.recall = detail::ratio(tp, tp + fn);
    cm.f1 = cm.precision + cm.recall > 0.0 ? 2.0 * cm.precision * cm.recall / (cm.precision + cm.recall) : 0.0;
    cm.support = tp + fn;
  }
  m.accuracy = detail::ratio(correct, total);
  m.confusion = std::move(confusion);
  return m;
}

/// `n_classes` of 0 infers max label + 1.
inline Metrics evaluate(std::span<const int> predicted, std::span<const int> truth, int n_classes = 0) {
  if (predicted.size() != truth.size())
    throw Error(Errc::LengthMismatch, "predictions", static_cast<std::int64_t>(predicted.size()),
                "truth has " + std::to_string(truth.size()));
  if (truth.empty()) throw Error(Errc::EmptyInput, "truth");
  int k = n_classes;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (predicted[i] < 0 || truth[i] < 0) throw Error(Errc::InvalidArgument, "label", static_cast<std::int64_t>(i));
    if (n_classes == 0) k = std::max({k, predicted[i] + 1, truth[i] + 1});
    else if (predicted[i] >= n_classes || truth[i] >= n_classes)
      throw Error(Errc::InvalidArgument, "label", static_cast<std::int64_t>(i), "out of range");
  }
  std::vector<std::vector<std::int64_t>> confusion(static_cast<std::size_t>(k),
                                                   std::vector<std::int64_t>(static_cast<std::size_t>(k), 0));
  for (std::size_t i = 0; i < truth.size(); ++i)
    ++confusion[static_cast<std::size_t>(truth[i])][static_cast<std::size_t>(predicted[i])];
  return metrics_from_confusion(std::move(confusion));
}

}  // namespace manipify::ml

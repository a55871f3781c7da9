#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "manipify/corpus.hpp"
#include "manipify/error.hpp"
#include "manipify/ml/dataset.hpp"
#include "manipify/ml/tree.hpp"
#include "manipify/unicode.hpp"

namespace manipify {

inline constexpr std::string_view kDefaultTargetCountry = "Pakistan";

struct LocalityFeatures {
  bool first_trend_is_target = false;
  std::int64_t n_other_countries = 0;
  bool trended_worldwide = false;

  static constexpr std::array<std::string_view, 3> kColumns = {"first_trend_is_target", "n_other_countries",
                                                               "trended_worldwide"};

  /// Booleans as 0/1, in column order.
  std::vector<double> encode() const {
    return {first_trend_is_target ? 1.0 : 0.0, static_cast<double>(n_other_countries), trended_worldwide ? 1.0 : 0.0};
  }

  friend bool operator==(const LocalityFeatures&, const LocalityFeatures&) = default;
};

inline LocalityFeatures locality_features(const TrendRecord& trend, std::string_view target_country) {
  const bool first_is_target = unicode::lowercase(trend.first_trend_location) == unicode::lowercase(target_country);
  return {first_is_target, trend.n_other_countries, trend.trended_worldwide};
}

inline std::vector<std::string> locality_feature_names() {
  return {LocalityFeatures::kColumns.begin(), LocalityFeatures::kColumns.end()};
}

/// True means local.
inline bool classify_local(const ml::TreeModel& model, const LocalityFeatures& f) {
  const auto x = f.encode();
  return model.predict(x) == 1;
}

/// Rows for the trends that carry a label, in trend order; label 1 is local.
template <class LabelOf>
ml::Dataset locality_dataset(const std::vector<TrendRecord>& trends, std::string_view target_country,
                             LabelOf&& label_of) {
  ml::Dataset ds{ml::DenseMatrix(0, LocalityFeatures::kColumns.size()), {}, locality_feature_names()};
  for (const auto& t : trends) {
    const std::optional<bool> local = label_of(t);
    if (!local) continue;
    ds.X.append_row(locality_features(t, target_country).encode());
    ds.y.push_back(*local ? 1 : 0);
  }
  return ds;
}

}  // namespace manipify

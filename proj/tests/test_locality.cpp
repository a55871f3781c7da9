#include <gtest/gtest.h>

#include "support/fixtures.hpp"

using namespace manipify;
using namespace manipify::testing;

namespace {

LocalityFeatures features_of(const std::string& tag) {
  for (const auto& r : sample_locality_rows())
    if (r.hashtag == tag) return locality_features(trend_of(r), kDefaultTargetCountry);
  throw std::runtime_error("unknown row " + tag);
}

}  // namespace

TEST(LocalityFeatures, TableRows) {
  EXPECT_EQ(features_of("samsungpakistan"), (LocalityFeatures{true, 0, false}));
  EXPECT_EQ(features_of("ufc257"), (LocalityFeatures{false, 58, true}));
  EXPECT_EQ(features_of("t10league"), (LocalityFeatures{false, 2, false}));
  EXPECT_EQ(features_of("samsungpakistan").encode(), (std::vector<double>{1, 0, 0}));
}

TEST(ClassifyLocal, TreeTrainedOnTable) {
  const auto tree = ml::train_tree(sample_locality_dataset());
  EXPECT_TRUE(classify_local(tree, {true, 1, false}));
  EXPECT_FALSE(classify_local(tree, {false, 12, false}));
  for (const auto& r : sample_locality_rows())
    EXPECT_EQ(classify_local(tree, locality_features(trend_of(r), kDefaultTargetCountry)), r.local) << r.hashtag;
}

TEST(ClassifyLocal, SingleLeafIsConstant) {
  ml::Dataset ds{ml::DenseMatrix::from_rows({{1, 0, 0}, {1, 2, 0}}), {1, 1}, locality_feature_names()};
  const auto tree = ml::train_tree(ds);
  ASSERT_EQ(tree.nodes.size(), 1u);
  for (const LocalityFeatures f : {LocalityFeatures{true, 0, false}, LocalityFeatures{false, 60, true}})
    EXPECT_TRUE(classify_local(tree, f));
}

TEST(LocalityDataset, SkipsUnlabelledTrends) {
  std::vector<TrendRecord> trends;
  for (const auto& r : sample_locality_rows()) trends.push_back(trend_of(r));
  const auto ds = locality_dataset(trends, "pakistan", [](const TrendRecord& t) -> std::optional<bool> {
    if (t.hashtag == "fajr") return std::nullopt;
    return t.first_trend_location == "Pakistan";
  });
  EXPECT_EQ(ds.size(), 5u);
  EXPECT_EQ(ds.feature_names, locality_feature_names());
}

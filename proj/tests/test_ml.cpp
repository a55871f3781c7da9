#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "support/properties.hpp"

using namespace manipify;
using namespace manipify::testing;

namespace {

ml::Dataset one_dimensional() {
  ml::Dataset ds{ml::DenseMatrix::from_rows({{-3}, {-2}, {-1}, {-0.5}, {0.5}, {1}, {2}, {3}}), {0, 0, 0, 0, 1, 1, 1, 1}, {"x"}};
  return ds;
}

}  // namespace

TEST(Split, FloorRuleSizes) {
  std::vector<int> labels = {0, 1, 0, 1, 0, 1, 0, 1, 0, 1};
  const auto s = ml::stratified_split(labels, 0.7, 1);
  EXPECT_EQ(s.train.size(), 7u);
  EXPECT_EQ(s.test.size(), 3u);
}

TEST(Split, SameSeedSamePartition) {
  std::vector<int> labels(50);
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<int>(i % 3 == 0);
  const auto a = ml::stratified_split(labels, 0.7, 9), b = ml::stratified_split(labels, 0.7, 9);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.test, b.test);
}

TEST(Split, Stratified) {
  std::vector<int> labels = {1, 1, 1, 1, 1, 0, 0, 0, 0, 0};
  const auto s = ml::stratified_split(labels, 0.6, 3);
  int pos = 0;
  for (std::size_t i : s.train) pos += labels[i];
  EXPECT_EQ(pos, 3);
  EXPECT_EQ(s.train.size(), 6u);
}

TEST(Split, DegenerateFractionRejected) {
  std::vector<int> labels = {0, 1};
  EXPECT_THROW(ml::stratified_split(labels, 0.3, 1), Error);
}

TEST(LogReg, SeparatesOneDimensionalData) {
  const auto m = ml::train_logreg(one_dimensional());
  const std::vector<double> plus = {1.0}, minus = {-1.0};
  EXPECT_GT(m.predict_proba(plus), 0.5);
  EXPECT_LT(m.predict_proba(minus), 0.5);
}

TEST(LogReg, ZeroModelGivesOneHalf) {
  const auto m = ml::LogRegModel::zero({"a", "b"});
  const std::vector<double> x = {3.0, -7.0};
  EXPECT_DOUBLE_EQ(m.predict_proba(x), 0.5);
}

TEST(LogReg, ProbabilityRisesWithIntercept) {
  auto m = ml::LogRegModel::zero({"a"});
  const std::vector<double> x = {1.0};
  double last = 0.0;
  for (double b : {-5.0, 0.0, 5.0, 20.0, 40.0}) {
    m.intercept = b;
    const double p = m.predict_proba(x);
    EXPECT_GT(p, last);
    last = p;
  }
  EXPECT_NEAR(last, 1.0, 1e-12);
}

TEST(LogReg, ReflectionThroughBoundarySumsToOne) {
  auto m = ml::LogRegModel::zero({"a", "b"});
  m.weights = {0.7, -1.3};
  m.scaler = ml::MinMaxScaler::identity(2);
  const std::vector<double> x = {2.0, 0.5}, reflected = {-2.0, -0.5};
  EXPECT_NEAR(m.predict_proba(x) + m.predict_proba(reflected), 1.0, 1e-15);
}

TEST(LogReg, GradientMatchesFiniteDifferences) {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) EXPECT_LT(gradient_check_error(rng), 1e-5);
}

TEST(LogReg, SingleClassRejected) {
  ml::Dataset ds{ml::DenseMatrix::from_rows({{1}, {2}}), {1, 1}, {"x"}};
  EXPECT_THROW(ml::train_logreg(ds), Error);
}

TEST(LogReg, JsonRoundTripPreservesPredictions) {
  const auto m = ml::train_logreg(one_dimensional());
  const auto back = ml::LogRegModel::from_json(nlohmann::json::parse(m.to_json().dump()));
  const std::vector<double> x = {0.25};
  EXPECT_EQ(back.predict_proba(x), m.predict_proba(x));
  EXPECT_EQ(back.to_json().dump(), m.to_json().dump());
}

TEST(LogReg, SchemaMismatchOnBadModel) {
  try {
    ml::LogRegModel::from_json(nlohmann::json::parse(R"({"weights":[1]})"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SchemaMismatch);
  }
}

TEST(Tree, PureLabelsGiveOneLeaf) {
  ml::Dataset ds{ml::DenseMatrix::from_rows({{1, 2}, {3, 4}, {5, 6}}), {1, 1, 1}, {}};
  const auto t = ml::train_tree(ds);
  ASSERT_EQ(t.nodes.size(), 1u);
  EXPECT_EQ(t.nodes[0].label, 1);
}

TEST(Tree, FitsTheLocalityTable) {
  const auto ds = sample_locality_dataset();
  const auto t = ml::train_tree(ds);
  EXPECT_EQ(t.predict_all(ds.X), ds.y);
}

TEST(Tree, ConflictingDuplicatesUseMajorityWithLowestLabelOnTies) {
  ml::Dataset tie{ml::DenseMatrix::from_rows({{1}, {1}}), {1, 0}, {}};
  const std::vector<double> x = {1.0};
  EXPECT_EQ(ml::train_tree(tie).predict(x), 0);
  ml::Dataset majority{ml::DenseMatrix::from_rows({{1}, {1}, {1}}), {1, 0, 1}, {}};
  EXPECT_EQ(ml::train_tree(majority).predict(x), 1);
}

TEST(Tree, MaxDepthLimitsGrowth) {
  ml::Dataset ds{ml::DenseMatrix::from_rows({{0}, {1}, {2}, {3}, {4}, {5}}), {0, 1, 0, 1, 0, 1}, {}};
  EXPECT_LE(ml::train_tree(ds, {1, 1}).depth(), 1);
  EXPECT_EQ(ml::train_tree(ds).predict_all(ds.X), ds.y);
}

TEST(Tree, JsonRoundTrip) {
  const auto t = ml::train_tree(sample_locality_dataset());
  const auto back = ml::TreeModel::from_json(nlohmann::json::parse(t.to_json().dump()));
  EXPECT_EQ(back.to_json().dump(), t.to_json().dump());
}

TEST(Metrics, BinaryCounts) {
  std::vector<int> pred, truth;
  auto add = [&](int p, int t, int n) {
    for (int i = 0; i < n; ++i) {
      pred.push_back(p);
      truth.push_back(t);
    }
  };
  add(1, 1, 9);
  add(1, 0, 1);
  add(0, 1, 1);
  add(0, 0, 9);
  const auto m = ml::evaluate(pred, truth, 2);
  EXPECT_DOUBLE_EQ(m.per_class[1].precision, 0.9);
  EXPECT_DOUBLE_EQ(m.per_class[1].recall, 0.9);
  EXPECT_DOUBLE_EQ(m.per_class[1].f1, 0.9);
  EXPECT_DOUBLE_EQ(m.accuracy, 0.9);
}

TEST(Metrics, AllCorrect) {
  std::vector<int> y = {0, 1, 2, 1};
  const auto m = ml::evaluate(y, y);
  EXPECT_DOUBLE_EQ(m.accuracy, 1.0);
  for (const auto& c : m.per_class) {
    EXPECT_DOUBLE_EQ(c.precision, 1.0);
    EXPECT_DOUBLE_EQ(c.recall, 1.0);
    EXPECT_DOUBLE_EQ(c.f1, 1.0);
  }
  EXPECT_DOUBLE_EQ(m.macro_f1(), 1.0);
}

TEST(Metrics, NeverPredictedClassHasZeroPrecision) {
  std::vector<int> pred = {0, 0, 0}, truth = {0, 1, 1};
  const auto m = ml::evaluate(pred, truth, 2);
  EXPECT_EQ(m.per_class[1].precision, 0.0);
  EXPECT_EQ(m.per_class[1].f1, 0.0);
}

TEST(Metrics, LengthMismatchRejected) {
  std::vector<int> a = {0, 1}, b = {0};
  EXPECT_THROW(ml::evaluate(a, b), Error);
}

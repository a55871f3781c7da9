#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "manipify/error.hpp"
#include "manipify/ml/dataset.hpp"
#include "manipify/ml/logreg.hpp"

namespace manipify::ml {

struct TreeConfig {
  int max_depth = 0;  // 0 = unlimited
  std::size_t min_leaf = 1;
};

/// Internal nodes have feature >= 0 and route x[feature] <= threshold to the left.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  int label = 0;
  std::vector<std::int64_t> class_counts;

  bool is_leaf() const { return feature < 0; }
};

struct TreeModel {
  std::vector<std::string> feature_names;
  int n_classes = 0;
  TreeConfig config;
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  std::size_t leaf_index(std::span<const double> x) const {
    if (x.size() != feature_names.size())
      throw Error(Errc::DimensionMismatch, "x", static_cast<std::int64_t>(x.size()),
                  "expected " + std::to_string(feature_names.size()) + " features");
    std::size_t i = 0;
    while (!nodes[i].is_leaf())
      i = static_cast<std::size_t>(x[static_cast<std::size_t>(nodes[i].feature)] <= nodes[i].threshold ? nodes[i].left
                                                                                                           : nodes[i].right);
    return i;
  }

  int predict(std::span<const double> x) const { return nodes[leaf_index(x)].label; }

  std::vector<int> predict_all(const DenseMatrix& X) const {
    std::vector<int> out;
    out.reserve(X.rows());
    for (std::size_t i = 0; i < X.rows(); ++i) out.push_back(predict(X.row(i)));
    return out;
  }

  int depth() const {
    std::vector<std::pair<int, int>> stack{{0, 0}};
    int best = 0;
    while (!stack.empty()) {
      auto [n, d] = stack.back();
      stack.pop_back();
      best = std::max(best, d);
      if (!nodes[static_cast<std::size_t>(n)].is_leaf()) {
        stack.emplace_back(nodes[static_cast<std::size_t>(n)].left, d + 1);
        stack.emplace_back(nodes[static_cast<std::size_t>(n)].right, d + 1);
      }
    }
    return best;
  }

  nlohmann::json to_json() const {
    nlohmann::json js_nodes = nlohmann::json::array();
    for (const auto& n : nodes) {
      if (n.is_leaf())
        js_nodes.push_back({{"label", n.label}, {"class_counts", n.class_counts}});
      else
        js_nodes.push_back({{"feature", n.feature}, {"threshold", n.threshold}, {"left", n.left}, {"right", n.right}});
    }
    return {{"kind", "tree"},
            {"schema_version", kModelSchemaVersion},
            {"feature_names", feature_names},
            {"n_classes", n_classes},
            {"max_depth", config.max_depth},
            {"min_leaf", config.min_leaf},
            {"nodes", std::move(js_nodes)}};
  }

  static TreeModel from_json(const nlohmann::json& j) {
    TreeModel m;
    try {
      if (j.at("kind").get<std::string>() != "tree") throw Error(Errc::SchemaMismatch, "kind", std::nullopt, "expected tree");
      if (j.at("schema_version").get<int>() != kModelSchemaVersion)
        throw Error(Errc::SchemaMismatch, "schema_version", j.at("schema_version").get<int>());
      m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
      m.n_classes = j.at("n_classes").get<int>();
      m.config.max_depth = j.at("max_depth").get<int>();
      m.config.min_leaf = j.at("min_leaf").get<std::size_t>();
      for (const auto& jn : j.at("nodes")) {
        TreeNode n;
        if (jn.contains("feature")) {
          n.feature = jn.at("feature").get<int>();
          n.threshold = jn.at("threshold").get<double>();
          n.left = jn.at("left").get<int>();
          n.right = jn.at("right").get<int>();
        } else {
          n.label = jn.at("label").get<int>();
          n.class_counts = jn.at("class_counts").get<std::vector<std::int64_t>>();
        }
        m.nodes.push_back(std::move(n));
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::SchemaMismatch, "tree", std::nullopt, e.what());
    }
    m.check_well_formed();
    return m;
  }

  /// Every node reachable exactly once from the root, children in range.
  void check_well_formed() const {
    if (nodes.empty()) throw Error(Errc::SchemaMismatch, "tree", std::nullopt, "no nodes");
    std::vector<int> visits(nodes.size(), 0);
    std::vector<std::size_t> stack{0};
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      if (++visits[i] > 1) throw Error(Errc::SchemaMismatch, "tree", static_cast<std::int64_t>(i), "node reached twice");
      const TreeNode& n = nodes[i];
      if (n.is_leaf()) continue;
      if (n.feature >= static_cast<int>(feature_names.size()) || n.left <= 0 || n.right <= 0 ||
          n.left >= static_cast<int>(nodes.size()) || n.right >= static_cast<int>(nodes.size()))
        throw Error(Errc::SchemaMismatch, "tree", static_cast<std::int64_t>(i), "bad node");
      stack.push_back(static_cast<std::size_t>(n.left));
      stack.push_back(static_cast<std::size_t>(n.right));
    }
    for (std::size_t i = 0; i < visits.size(); ++i)
      if (visits[i] != 1) throw Error(Errc::SchemaMismatch, "tree", static_cast<std::int64_t>(i), "unreachable node");
  }
};

namespace detail {

inline int majority(const std::vector<std::int64_t>& counts) {
  int best = 0;
  for (std::size_t c = 1; c < counts.size(); ++c)
    if (counts[c] > counts[static_cast<std::size_t>(best)]) best = static_cast<int>(c);
  return best;
}

/// Sum over children of sum_c count_c^2 / n_child as an exact fraction; a larger
/// value means a lower weighted Gini impurity.
struct SplitScore {
  unsigned __int128 num = 0;
  unsigned __int128 den = 1;

  static SplitScore make(const std::vector<std::int64_t>& left, std::int64_t n_left,
                         const std::vector<std::int64_t>& right, std::int64_t n_right) {
    unsigned __int128 sl = 0, sr = 0;
    for (auto c : left) sl += static_cast<unsigned __int128>(c) * static_cast<unsigned __int128>(c);
    for (auto c : right) sr += static_cast<unsigned __int128>(c) * static_cast<unsigned __int128>(c);
    const auto nl = static_cast<unsigned __int128>(n_left);
    const auto nr = static_cast<unsigned __int128>(n_right);
    return {sl * nr + sr * nl, nl * nr};
  }

  bool better_than(const SplitScore& o) const { return num * o.den > o.num * den; }
};

class TreeBuilder {
 public:
  TreeBuilder(const Dataset& ds, int n_classes, TreeConfig config)
      : ds_(ds), n_classes_(n_classes), config_(config) {}

  int build(std::vector<std::size_t> idx, int depth, std::vector<TreeNode>& nodes) {
    std::vector<std::int64_t> counts(static_cast<std::size_t>(n_classes_), 0);
    for (std::size_t i : idx) ++counts[static_cast<std::size_t>(ds_.y[i])];

    const int id = static_cast<int>(nodes.size());
    nodes.push_back({});
    nodes.back().class_counts = counts;
    nodes.back().label = majority(counts);

    const bool pure = std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; }) <= 1;
    const bool depth_exhausted = config_.max_depth > 0 && depth >= config_.max_depth;
    if (pure || depth_exhausted || idx.size() < 2 * config_.min_leaf) return id;

    auto split = best_split(idx);
    if (!split) return id;

    std::vector<std::size_t> left, right;
    for (std::size_t i : idx) (ds_.X(i, split->feature) <= split->threshold ? left : right).push_back(i);

    const int left_id = build(std::move(left), depth + 1, nodes);
    const int right_id = build(std::move(right), depth + 1, nodes);
    TreeNode& node = nodes[static_cast<std::size_t>(id)];
    node.feature = static_cast<int>(split->feature);
    node.threshold = split->threshold;
    node.left = left_id;
    node.right = right_id;
    node.class_counts.clear();
    return id;
  }

 private:
  struct Split {
    std::size_t feature;
    double threshold;
  };

  /// Exhaustive scan over midpoints of consecutive distinct values. Strict
  /// improvement is required to replace the incumbent, so ties resolve to the
  /// lowest feature index and then the lowest threshold.
  std::optional<Split> best_split(const std::vector<std::size_t>& idx) const {
    std::optional<Split> best;
    SplitScore best_score{0, 1};
    const auto n = static_cast<std::int64_t>(idx.size());
    const auto min_leaf = static_cast<std::int64_t>(config_.min_leaf);
    std::vector<std::size_t> order(idx);
    for (std::size_t f = 0; f < ds_.X.cols(); ++f) {
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double va = ds_.X(a, f), vb = ds_.X(b, f);
        return va != vb ? va < vb : a < b;
      });
      std::vector<std::int64_t> left(static_cast<std::size_t>(n_classes_), 0);
      std::vector<std::int64_t> right(static_cast<std::size_t>(n_classes_), 0);
      for (std::size_t i : order) ++right[static_cast<std::size_t>(ds_.y[i])];
      for (std::int64_t k = 0; k + 1 < n; ++k) {
        const std::size_t i = order[static_cast<std::size_t>(k)];
        const auto label = static_cast<std::size_t>(ds_.y[i]);
        ++left[label];
        --right[label];
        const double here = ds_.X(i, f);
        const double next = ds_.X(order[static_cast<std::size_t>(k + 1)], f);
        if (here == next) continue;
        const std::int64_t n_left = k + 1;
        if (n_left < min_leaf || n - n_left < min_leaf) continue;
        const SplitScore score = SplitScore::make(left, n_left, right, n - n_left);
        if (!best || score.better_than(best_score)) {
          best = Split{f, here + (next - here) / 2.0};
          best_score = score;
        }
      }
    }
    return best;
  }

  const Dataset& ds_;
  int n_classes_;
  TreeConfig config_;
};

}  // namespace detail

/// CART with Gini impurity. A node is split whenever it is impure, within the
/// depth limit, and some feature separates it into two children of at least
/// min_leaf samples; the best split is taken even if it does not lower impurity.
inline TreeModel train_tree(const Dataset& train, const TreeConfig& config = {}) {
  train.validate();
  if (train.size() == 0) throw Error(Errc::EmptyInput, "train");
  if (config.min_leaf < 1 || config.max_depth < 0) throw Error(Errc::InvalidArgument, "config");

  TreeModel model;
  model.n_classes = *std::max_element(train.y.begin(), train.y.end()) + 1;
  model.config = config;
  model.feature_names = train.feature_names;
  if (model.feature_names.empty())
    for (std::size_t j = 0; j < train.X.cols(); ++j) model.feature_names.push_back("x" + std::to_string(j));

  std::vector<std::size_t> idx(train.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  detail::TreeBuilder builder(train, model.n_classes, config);
  builder.build(std::move(idx), 0, model.nodes);
  return model;
}

}  // namespace manipify::ml

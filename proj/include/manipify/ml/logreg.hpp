#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "manipify/error.hpp"
#include "manipify/ml/dataset.hpp"
#include "manipify/sparse.hpp"

namespace manipify::ml {

inline constexpr int kModelSchemaVersion = 1;

inline double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

/// log(1 + e^z) without overflow.
inline double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

/// Per-feature min-max scaling to [0, 1]. Constant columns map to 0.
struct MinMaxScaler {
  std::vector<double> min;
  std::vector<double> max;

  std::size_t size() const { return min.size(); }

  template <class Matrix>
  static MinMaxScaler fit(const Matrix& X) {
    const std::size_t d = X.cols();
    MinMaxScaler s;
    s.min.assign(d, std::numeric_limits<double>::infinity());
    s.max.assign(d, -std::numeric_limits<double>::infinity());
    std::vector<std::size_t> seen(d, 0);
    for (std::size_t i = 0; i < X.rows(); ++i)
      for_each_nonzero(X.row(i), [&](std::size_t j, double v) {
        s.min[j] = std::min(s.min[j], v);
        s.max[j] = std::max(s.max[j], v);
        ++seen[j];
      });
    for (std::size_t j = 0; j < d; ++j) {
      if (seen[j] < X.rows()) {  // implicit zeros of sparse rows
        s.min[j] = std::min(s.min[j], 0.0);
        s.max[j] = std::max(s.max[j], 0.0);
      }
      if (seen[j] == 0 && X.rows() == 0) s.min[j] = s.max[j] = 0.0;
    }
    return s;
  }

  static MinMaxScaler identity(std::size_t d) { return {std::vector<double>(d, 0.0), std::vector<double>(d, 1.0)}; }

  double range(std::size_t j) const { return max[j] - min[j]; }

  double apply(std::size_t j, double v) const {
    const double r = range(j);
    return r > 0.0 ? (v - min[j]) / r : 0.0;
  }
};

/// Linear form z = offset + sum_j slope_j * x_j in raw (unscaled) feature space.
/// Folding the scaler into the weights keeps sparse rows sparse.
struct RawLinearForm {
  std::vector<double> slope;
  double offset = 0.0;

  RawLinearForm(std::span<const double> weights, double intercept, const MinMaxScaler& scaler)
      : slope(weights.size(), 0.0), offset(intercept) {
    for (std::size_t j = 0; j < weights.size(); ++j) {
      const double r = scaler.range(j);
      if (r > 0.0) {
        slope[j] = weights[j] / r;
        offset -= slope[j] * scaler.min[j];
      }
    }
  }

  template <class Row>
  double operator()(const Row& x) const {
    double z = offset;
    for_each_nonzero(x, [&](std::size_t j, double v) { z += slope[j] * v; });
    return z;
  }
};

struct LogRegConfig {
  double learning_rate = 0.1;
  int epochs = 1000;
  double l2 = 1e-4;
  bool scale_features = true;

  friend bool operator==(const LogRegConfig&, const LogRegConfig&) = default;
};

/// Mean log-loss plus (l2 / 2) * ||w||^2 over scaled features; the intercept is
/// not penalized.
template <class Matrix>
class LogisticObjective {
 public:
  LogisticObjective(const Matrix& X, std::span<const int> y, MinMaxScaler scaler, double l2)
      : X_(X), y_(y), scaler_(std::move(scaler)), l2_(l2) {
    if (X.rows() != y.size()) throw Error(Errc::LengthMismatch, "labels", static_cast<std::int64_t>(y.size()));
    if (scaler_.size() != X.cols()) throw Error(Errc::DimensionMismatch, "scaler", static_cast<std::int64_t>(scaler_.size()));
  }

  std::size_t dimension() const { return X_.cols(); }
  const MinMaxScaler& scaler() const { return scaler_; }

  double loss(std::span<const double> w, double b) const {
    const RawLinearForm form(w, b, scaler_);
    double total = 0.0;
    for (std::size_t i = 0; i < X_.rows(); ++i) {
      const double z = form(X_.row(i));
      total += softplus(z) - (y_[i] ? z : 0.0);
    }
    double penalty = 0.0;
    for (double wj : w) penalty += wj * wj;
    return total / static_cast<double>(X_.rows()) + 0.5 * l2_ * penalty;
  }

  /// Writes d loss / d w into grad_w and returns d loss / d b.
  double gradient(std::span<const double> w, double b, std::span<double> grad_w) const {
    const RawLinearForm form(w, b, scaler_);
    std::fill(grad_w.begin(), grad_w.end(), 0.0);
    double residual_sum = 0.0;
    for (std::size_t i = 0; i < X_.rows(); ++i) {
      const auto& row = X_.row(i);
      const double g = sigmoid(form(row)) - (y_[i] ? 1.0 : 0.0);
      residual_sum += g;
      for_each_nonzero(row, [&](std::size_t j, double v) { grad_w[j] += g * v; });
    }
    const double n = static_cast<double>(X_.rows());
    for (std::size_t j = 0; j < grad_w.size(); ++j) {
      const double r = scaler_.range(j);
      const double data_term = r > 0.0 ? (grad_w[j] - scaler_.min[j] * residual_sum) / (r * n) : 0.0;
      grad_w[j] = data_term + l2_ * w[j];
    }
    return residual_sum / n;
  }

 private:
  const Matrix& X_;
  std::span<const int> y_;
  MinMaxScaler scaler_;
  double l2_;
};

/// Binary logistic regression. Weights live in scaled-feature space.
struct LogRegModel {
  std::vector<std::string> feature_names;
  std::vector<double> weights;
  double intercept = 0.0;
  MinMaxScaler scaler;
  LogRegConfig config;
  double final_gradient_norm = 0.0;

  static LogRegModel zero(std::vector<std::string> names) {
    LogRegModel m;
    m.weights.assign(names.size(), 0.0);
    m.scaler = MinMaxScaler::identity(names.size());
    m.feature_names = std::move(names);
    return m;
  }

  std::size_t dimension() const { return weights.size(); }

  double decision(std::span<const double> x) const {
    if (x.size() != weights.size())
      throw Error(Errc::DimensionMismatch, "x", static_cast<std::int64_t>(x.size()),
                  "expected " + std::to_string(weights.size()) + " features");
    return linear_form()(x);
  }

  double decision(const SparseVector& x) const {
    for (const auto& [j, _] : x.entries)
      if (j >= weights.size()) throw Error(Errc::DimensionMismatch, "x", static_cast<std::int64_t>(j));
    return linear_form()(x);
  }

  RawLinearForm linear_form() const { return RawLinearForm(weights, intercept, scaler); }

  double predict_proba(std::span<const double> x) const { return sigmoid(decision(x)); }
  double predict_proba(const SparseVector& x) const { return sigmoid(decision(x)); }

  template <class Matrix>
  std::vector<double> predict_proba_all(const Matrix& X) const {
    if (X.cols() != weights.size()) throw Error(Errc::DimensionMismatch, "X", static_cast<std::int64_t>(X.cols()));
    const RawLinearForm form = linear_form();
    std::vector<double> out(X.rows());
    for (std::size_t i = 0; i < X.rows(); ++i) out[i] = sigmoid(form(X.row(i)));
    return out;
  }

  template <class Matrix>
  std::vector<int> predict_all(const Matrix& X) const {
    std::vector<int> out;
    for (double p : predict_proba_all(X)) out.push_back(p >= 0.5 ? 1 : 0);
    return out;
  }

  nlohmann::json to_json() const {
    return {{"kind", "logreg"},
            {"schema_version", kModelSchemaVersion},
            {"feature_names", feature_names},
            {"weights", weights},
            {"intercept", intercept},
            {"scaler", {{"min", scaler.min}, {"max", scaler.max}}},
            {"config",
             {{"learning_rate", config.learning_rate},
              {"epochs", config.epochs},
              {"l2", config.l2},
              {"scale_features", config.scale_features}}},
            {"final_gradient_norm", final_gradient_norm}};
  }

  static LogRegModel from_json(const nlohmann::json& j) {
    LogRegModel m;
    try {
      if (j.at("kind").get<std::string>() != "logreg")
        throw Error(Errc::SchemaMismatch, "kind", std::nullopt, "expected logreg");
      if (j.at("schema_version").get<int>() != kModelSchemaVersion)
        throw Error(Errc::SchemaMismatch, "schema_version", j.at("schema_version").get<int>());
      m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
      m.weights = j.at("weights").get<std::vector<double>>();
      m.intercept = j.at("intercept").get<double>();
      m.scaler.min = j.at("scaler").at("min").get<std::vector<double>>();
      m.scaler.max = j.at("scaler").at("max").get<std::vector<double>>();
      const auto& c = j.at("config");
      m.config.learning_rate = c.at("learning_rate").get<double>();
      m.config.epochs = c.at("epochs").get<int>();
      m.config.l2 = c.at("l2").get<double>();
      m.config.scale_features = c.at("scale_features").get<bool>();
      m.final_gradient_norm = j.at("final_gradient_norm").get<double>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::SchemaMismatch, "logreg", std::nullopt, e.what());
    }
    const std::size_t d = m.weights.size();
    if (m.feature_names.size() != d || m.scaler.min.size() != d || m.scaler.max.size() != d)
      throw Error(Errc::SchemaMismatch, "logreg", std::nullopt, "inconsistent dimensions");
    return m;
  }
};

/// Full-batch gradient descent from zero weights. Bitwise deterministic for a
/// given (data order, config).
template <class Matrix>
LogRegModel train_logreg(const BasicDataset<Matrix>& train, const LogRegConfig& config = {}) {
  train.validate();
  bool has_pos = false, has_neg = false;
  for (int label : train.y) {
    if (label != 0 && label != 1) throw Error(Errc::InvalidArgument, "y", label, "labels must be 0 or 1");
    has_pos = has_pos || label == 1;
    has_neg = has_neg || label == 0;
  }
  if (!has_pos || !has_neg)
    throw Error(Errc::DegenerateData, has_pos ? "class 0" : "class 1", std::nullopt, "class absent from training data");
  if (config.epochs < 0 || !(config.learning_rate > 0.0) || config.l2 < 0.0)
    throw Error(Errc::InvalidArgument, "config");

  const std::size_t d = train.X.cols();
  MinMaxScaler scaler = config.scale_features ? MinMaxScaler::fit(train.X) : MinMaxScaler::identity(d);
  const LogisticObjective<Matrix> objective(train.X, train.y, scaler, config.l2);

  std::vector<double> w(d, 0.0), grad(d, 0.0);
  double b = 0.0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const double grad_b = objective.gradient(w, b, grad);
    for (std::size_t j = 0; j < d; ++j) w[j] -= config.learning_rate * grad[j];
    b -= config.learning_rate * grad_b;
  }
  const double grad_b = objective.gradient(w, b, grad);
  double norm2 = grad_b * grad_b;
  for (double g : grad) norm2 += g * g;

  LogRegModel model;
  model.feature_names = train.feature_names.empty() ? std::vector<std::string>(d) : train.feature_names;
  if (train.feature_names.empty())
    for (std::size_t j = 0; j < d; ++j) model.feature_names[j] = "x" + std::to_string(j);
  model.weights = std::move(w);
  model.intercept = b;
  model.scaler = std::move(scaler);
  model.config = config;
  model.final_gradient_norm = std::sqrt(norm2);
  return model;
}

}  // namespace manipify::ml

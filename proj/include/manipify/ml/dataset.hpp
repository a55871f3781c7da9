#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "manipify/error.hpp"
#include "manipify/sparse.hpp"

namespace manipify::ml {

/// Row-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static DenseMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    DenseMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error(Errc::DimensionMismatch, "row", static_cast<std::int64_t>(i));
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  void append_row(std::span<const double> values) {
    if (rows_ == 0 && cols_ == 0) cols_ = values.size();
    if (values.size() != cols_) throw Error(Errc::DimensionMismatch, "row", static_cast<std::int64_t>(rows_));
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }

  DenseMatrix select(std::span<const std::size_t> indices) const {
    DenseMatrix out(indices.size(), cols_);
    for (std::size_t k = 0; k < indices.size(); ++k) {
      auto src = row(indices[k]);
      std::copy(src.begin(), src.end(), out.row(k).begin());
    }
    return out;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Rows stored as sparse vectors over a fixed column count.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  explicit SparseMatrix(std::size_t cols) : cols_(cols) {}

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const SparseVector& row(std::size_t i) const { return rows_[i]; }

  void append_row(SparseVector v) {
    for (const auto& [j, _] : v.entries)
      if (j >= cols_) throw Error(Errc::DimensionMismatch, "column", static_cast<std::int64_t>(j));
    rows_.push_back(std::move(v));
  }

  SparseMatrix select(std::span<const std::size_t> indices) const {
    SparseMatrix out(cols_);
    out.rows_.reserve(indices.size());
    for (std::size_t i : indices) out.rows_.push_back(rows_[i]);
    return out;
  }

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<SparseVector> rows_;
};

template <class F>
void for_each_nonzero(std::span<const double> row, F&& f) {
  for (std::size_t j = 0; j < row.size(); ++j) f(j, row[j]);
}

template <class F>
void for_each_nonzero(const SparseVector& row, F&& f) {
  for (const auto& [j, v] : row.entries) f(static_cast<std::size_t>(j), v);
}

/// Feature matrix plus integer class labels (0..k-1).
template <class Matrix>
struct BasicDataset {
  Matrix X;
  std::vector<int> y;
  std::vector<std::string> feature_names;

  std::size_t size() const { return y.size(); }

  void validate() const {
    if (X.rows() != y.size()) throw Error(Errc::LengthMismatch, "labels", static_cast<std::int64_t>(y.size()));
    if (!feature_names.empty() && feature_names.size() != X.cols())
      throw Error(Errc::DimensionMismatch, "feature_names", static_cast<std::int64_t>(feature_names.size()));
    for (std::size_t i = 0; i < X.rows(); ++i)
      for_each_nonzero(X.row(i), [&](std::size_t, double v) {
        if (!std::isfinite(v)) throw Error(Errc::InvalidArgument, "X", static_cast<std::int64_t>(i), "non-finite value");
      });
    for (int label : y)
      if (label < 0) throw Error(Errc::InvalidArgument, "y", label, "negative label");
  }

  BasicDataset select(std::span<const std::size_t> indices) const {
    BasicDataset out{X.select(indices), {}, feature_names};
    out.y.reserve(indices.size());
    for (std::size_t i : indices) out.y.push_back(y[i]);
    return out;
  }
};

using Dataset = BasicDataset<DenseMatrix>;
using SparseDataset = BasicDataset<SparseMatrix>;

}  // namespace manipify::ml

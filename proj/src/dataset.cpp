//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "bkp/dataset.hpp"

#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "bkp/errors.hpp"

namespace bkp {
namespace {
  bool is_count(double v) {
    return std::isfinite(v) && v >= 0 && std::floor(v) == v;
  }

  void validate_inputs(const Matrix &x, const InputBounds &bounds) {
    if (x.rows() < 1)
      throw DataError("dataset must contain at least one observation");
    if (x.cols() < 1)
      throw DataError("dataset must have at least one input column");
    if (bounds.dim() != x.cols()) {
      throw DataError(fmt::format("bounds have {} dimensions but inputs have {}",
                                  bounds.dim(), x.cols()));
    }
    // Throws on the first offending entry.
    static_cast<void>(normalize_inputs(x, bounds));
  }
} // namespace

InputBounds::InputBounds(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size())
    throw DomainError("bounds: lower and upper have different lengths");
  if (lower_.empty())
    throw DomainError("bounds: at least one dimension required");
  for (std::size_t j = 0; j < lower_.size(); ++j) {
    if (!std::isfinite(lower_[j]) || !std::isfinite(upper_[j])
        || !(lower_[j] < upper_[j])) {
      throw DomainError(
          fmt::format("bounds: dimension {} has lower {} not below upper {}",
                      j + 1, lower_[j], upper_[j]));
    }
  }
}

InputBounds InputBounds::unit(Eigen::Index d) {
  return { std::vector<double>(static_cast<std::size_t>(d), 0.0),
           std::vector<double>(static_cast<std::size_t>(d), 1.0) };
}

bool InputBounds::is_unit() const {
  for (std::size_t j = 0; j < lower_.size(); ++j) {
    if (lower_[j] != 0 || upper_[j] != 1)
      return false;
  }
  return true;
}

Matrix normalize_inputs(const MatrixRef &x, const InputBounds &bounds) {
  if (x.cols() != bounds.dim()) {
    throw DataError(fmt::format("inputs have {} columns but bounds have {}",
                                x.cols(), bounds.dim()));
  }
  Matrix u(x.rows(), x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double lo = bounds.lower()[j], hi = bounds.upper()[j];
    const double width = hi - lo;
    const double slack = kBoundsTolerance * std::max(1.0, width);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const double v = x(i, j);
      if (!std::isfinite(v) || v < lo - slack || v > hi + slack) {
        throw DataError(fmt::format(
            "row {}, column {}: value {} outside bounds [{}, {}]", i + 1,
            j + 1, v, lo, hi));
      }
      u(i, j) = std::clamp((v - lo) / width, 0.0, 1.0);
    }
  }
  return u;
}

Matrix denormalize_inputs(const MatrixRef &u, const InputBounds &bounds) {
  if (u.cols() != bounds.dim())
    throw DomainError("denormalize_inputs: dimension mismatch");
  Matrix x(u.rows(), u.cols());
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    const double lo = bounds.lower()[j], width = bounds.upper()[j] - lo;
    for (Eigen::Index i = 0; i < u.rows(); ++i)
      x(i, j) = lo + u(i, j) * width;
  }
  return x;
}

void BkpDataset::validate() const {
  validate_inputs(x, bounds);
  if (y.size() != x.rows() || m.size() != x.rows()) {
    throw DataError(fmt::format(
        "expected {} success and trial counts, got {} and {}", x.rows(),
        y.size(), m.size()));
  }
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    if (!is_count(y[i]) || !is_count(m[i])) {
      throw DataError(fmt::format(
          "row {}: counts must be nonnegative integers (y={}, m={})", i + 1,
          y[i], m[i]));
    }
    if (m[i] < 1)
      throw DataError(fmt::format("row {}: trial count m must be >= 1", i + 1));
    if (y[i] > m[i]) {
      throw DataError(fmt::format("row {}: successes y={} exceed trials m={}",
                                  i + 1, y[i], m[i]));
    }
  }
}

void DkpDataset::validate() const {
  validate_inputs(x, bounds);
  if (counts.rows() != x.rows()) {
    throw DataError(fmt::format("expected {} count rows, got {}", x.rows(),
                                counts.rows()));
  }
  if (counts.cols() < 2)
    throw DataError("multinomial data needs at least two classes");
  for (Eigen::Index i = 0; i < counts.rows(); ++i) {
    double total = 0;
    for (Eigen::Index s = 0; s < counts.cols(); ++s) {
      if (!is_count(counts(i, s))) {
        throw DataError(fmt::format(
            "row {}, class {}: count must be a nonnegative integer (got {})",
            i + 1, s + 1, counts(i, s)));
      }
      total += counts(i, s);
    }
    if (total < 1)
      throw DataError(fmt::format("row {}: class counts sum to zero", i + 1));
  }
}

DkpDataset to_two_class(const BkpDataset &data) {
  DkpDataset out { data.x, data.bounds, Matrix(data.size(), 2) };
  out.counts.col(0) = data.y;
  out.counts.col(1) = data.m - data.y;
  return out;
}

} // namespace bkp

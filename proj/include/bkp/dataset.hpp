//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef BKP_DATASET_HPP_
#define BKP_DATASET_HPP_

#include <vector>

#include "bkp/types.hpp"

namespace bkp {

/// Axis-aligned box used to map raw inputs onto the unit hypercube.
class InputBounds {
public:
  InputBounds() = default;

  // Throws DomainError unless lower[j] < upper[j] for every j.
  InputBounds(std::vector<double> lower, std::vector<double> upper);

  static InputBounds unit(Eigen::Index d);

  Eigen::Index dim() const { return static_cast<Eigen::Index>(lower_.size()); }
  const std::vector<double> &lower() const { return lower_; }
  const std::vector<double> &upper() const { return upper_; }

  bool is_unit() const;

private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

// Slack allowed at the box faces before a point counts as outside.
inline constexpr double kBoundsTolerance = 1e-12;

/// Maps each row onto [0,1]^d. Throws DataError naming the first row/column
/// that lies outside the bounds.
Matrix normalize_inputs(const MatrixRef &x, const InputBounds &bounds);

Matrix denormalize_inputs(const MatrixRef &u, const InputBounds &bounds);

/// Binomial observations: y_i successes out of m_i trials at x_i.
struct BkpDataset {
  Matrix x;
  InputBounds bounds;
  Vector y;
  Vector m;

  Eigen::Index size() const { return x.rows(); }
  Eigen::Index dim() const { return x.cols(); }

  // Throws DataError on any violated invariant.
  void validate() const;
};

/// Multinomial observations: row i of `counts` holds the class counts at x_i.
struct DkpDataset {
  Matrix x;
  InputBounds bounds;
  Matrix counts;

  Eigen::Index size() const { return x.rows(); }
  Eigen::Index dim() const { return x.cols(); }
  Eigen::Index classes() const { return counts.cols(); }

  void validate() const;
};

// Counts as a two-class table (y, m - y).
DkpDataset to_two_class(const BkpDataset &data);

} // namespace bkp

#endif // BKP_DATASET_HPP_

//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef BKP_DETAIL_COUNT_MODEL_HPP_
#define BKP_DETAIL_COUNT_MODEL_HPP_

#include <vector>

#include "bkp/kernels.hpp"
#include "bkp/priors.hpp"
#include "bkp/types.hpp"

namespace bkp {

enum class LossKind {
  kBrier,
  kLogLoss,
};

namespace detail {
  /**
   * Training data on the unit cube as a class-count table.
   *
   * Binomial data is stored as the two columns (y, m - y), so the binomial
   * and multinomial models share every arithmetic path below.
   */
  struct CountTable {
    Matrix x;       // n x d, normalized
    Matrix counts;  // n x q
    Vector trials;  // row sums
    Matrix props;   // counts / trials

    Eigen::Index size() const { return x.rows(); }
    Eigen::Index dim() const { return x.cols(); }
    Eigen::Index classes() const { return counts.cols(); }
  };

  CountTable make_count_table(Matrix x_unit, Matrix counts);

  // Posterior concentrations at normalized query rows (p x q), using all
  // training rows.
  Matrix posterior_alphas(const CountTable &table, const KernelSpec &kernel,
                          const PriorSpec &prior, const MatrixRef &query);

  // Leave-one-out posterior concentrations (n x q): row i uses every training
  // row except i, for the counts as well as the adaptive prior.
  Matrix loo_alphas(const CountTable &table, const KernelSpec &kernel,
                    const PriorSpec &prior);

  // Averaged loss of concentration rows against the observed table.
  // `binary` selects the single-success-probability form of the Brier score.
  double loss_from_alphas(const CountTable &table, const MatrixRef &alphas,
                          LossKind kind, bool binary);

  inline constexpr double kProbClamp = 1e-12;
} // namespace detail
} // namespace bkp

#endif // BKP_DETAIL_COUNT_MODEL_HPP_

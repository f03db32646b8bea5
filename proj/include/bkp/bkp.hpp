//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef BKP_BKP_HPP_
#define BKP_BKP_HPP_

#include <optional>
#include <string>
#include <vector>

#include "bkp/model.hpp"

namespace bkp {

/// Beta kernel process fitted to binomial data.
class FittedBkp: public KernelModelBase {
public:
  FittedBkp(Matrix x_unit, InputBounds bounds, Vector y, Vector m,
            KernelSpec kernel, PriorSpec prior, LossKind loss_kind,
            double loss_min, bool theta_user_fixed, std::uint64_t seed,
            std::vector<StartRecord> starts = {});

  Vector y() const { return table().counts.col(0); }
  Vector m() const { return table().trials; }
};

struct PosteriorSummary {
  double alpha_n;
  double beta_n;
  double mean;
  double variance;
  double lower;
  double upper;
  std::optional<int> label;
};

FittedBkp fit_bkp(const BkpDataset &data, const FitOptions &options = {});

// Posterior Beta shapes at a raw-scale point.
BetaShapes posterior_at(const FittedBkp &model, const VectorRef &x);

/// Posterior mean, variance and equal-tailed credible interval at each row
/// of `xnew`. A 0/1 label (mean > threshold) is attached only when every
/// training row has m = 1.
std::vector<PosteriorSummary> predict(const FittedBkp &model,
                                      const MatrixRef &xnew,
                                      double ci_level = 0.95,
                                      double threshold = 0.5);

// Summary of Beta(alpha, beta) without a label.
PosteriorSummary summarize_beta(double alpha, double beta, double ci_level);

struct BkpSimulation {
  Matrix draws; // p x n_sim
  std::optional<Eigen::MatrixXi> labels;
};

/// Independent Beta posterior draws per query point. Point j uses stream
/// (seed, j), so output is reproducible and independent of evaluation order.
/// Labels (draw > threshold) are produced when a threshold is given and every
/// training row has m = 1.
BkpSimulation simulate(const FittedBkp &model, const MatrixRef &xnew,
                       int n_sim, std::optional<double> threshold,
                       std::uint64_t seed);

// Multi-line report of the fitted model.
std::string summary(const FittedBkp &model);

} // namespace bkp

#endif // BKP_BKP_HPP_

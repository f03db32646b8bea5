//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "bkp/bkp.hpp"

#include <utility>

#include "bkp/errors.hpp"
#include "bkp/numerics.hpp"

namespace bkp {
namespace {
  Matrix two_class_counts(const Vector &y, const Vector &m) {
    if (y.size() != m.size())
      throw DataError("y and m have different lengths");
    Matrix counts(y.size(), 2);
    counts.col(0) = y;
    counts.col(1) = m - y;
    return counts;
  }

  void check_probability(double v, const char *name) {
    if (!(v > 0 && v < 1))
      throw DomainError(std::string(name) + " must lie in (0, 1)");
  }
} // namespace

FittedBkp::FittedBkp(Matrix x_unit, InputBounds bounds, Vector y, Vector m,
                     KernelSpec kernel, PriorSpec prior, LossKind loss_kind,
                     double loss_min, bool theta_user_fixed,
                     std::uint64_t seed, std::vector<StartRecord> starts)
    : KernelModelBase(
          detail::make_count_table(std::move(x_unit), two_class_counts(y, m)),
          std::move(bounds), std::move(kernel), std::move(prior), loss_kind,
          loss_min, theta_user_fixed, seed, std::move(starts)) { }

FittedBkp fit_bkp(const BkpDataset &data, const FitOptions &options) {
  data.validate();
  Matrix x_unit = normalize_inputs(data.x, data.bounds);
  auto table = detail::make_count_table(x_unit, two_class_counts(data.y, data.m));
  auto tuned = detail::tune(table, options, true);
  return FittedBkp(std::move(x_unit), data.bounds, data.y, data.m,
                   KernelSpec { options.kernel, std::move(tuned.gamma) },
                   options.prior, options.loss, tuned.loss, tuned.user_fixed,
                   options.seed, std::move(tuned.starts));
}

BetaShapes posterior_at(const FittedBkp &model, const VectorRef &x) {
  if (x.size() != model.dim())
    throw DomainError("query point has the wrong dimension");
  const Matrix alphas = model.posterior_alphas(x.transpose());
  return { alphas(0, 0), alphas(0, 1) };
}

PosteriorSummary summarize_beta(double alpha, double beta, double ci_level) {
  check_probability(ci_level, "ci_level");
  const double total = alpha + beta;
  const double mean = alpha / total;
  return {
    alpha,
    beta,
    mean,
    mean * (1 - mean) / (total + 1),
    beta_quantile((1 - ci_level) / 2, alpha, beta),
    beta_quantile((1 + ci_level) / 2, alpha, beta),
    std::nullopt,
  };
}

std::vector<PosteriorSummary> predict(const FittedBkp &model,
                                      const MatrixRef &xnew, double ci_level,
                                      double threshold) {
  check_probability(ci_level, "ci_level");
  check_probability(threshold, "threshold");
  const Matrix alphas = model.posterior_alphas(xnew);
  const bool labelled = model.single_trial();
  std::vector<PosteriorSummary> out;
  out.reserve(static_cast<std::size_t>(alphas.rows()));
  for (Eigen::Index j = 0; j < alphas.rows(); ++j) {
    auto s = summarize_beta(alphas(j, 0), alphas(j, 1), ci_level);
    if (labelled)
      s.label = s.mean > threshold ? 1 : 0;
    out.push_back(s);
  }
  return out;
}

BkpSimulation simulate(const FittedBkp &model, const MatrixRef &xnew,
                       int n_sim, std::optional<double> threshold,
                       std::uint64_t seed) {
  if (n_sim < 1)
    throw DomainError("n_sim must be at least 1");
  if (threshold)
    check_probability(*threshold, "threshold");
  const Matrix alphas = model.posterior_alphas(xnew);
  BkpSimulation out { Matrix(alphas.rows(), n_sim), std::nullopt };
  for (Eigen::Index j = 0; j < alphas.rows(); ++j) {
    auto rng = detail::point_stream(seed, j);
    for (int s = 0; s < n_sim; ++s)
      out.draws(j, s) = sample_beta(alphas(j, 0), alphas(j, 1), rng);
  }
  if (threshold && model.single_trial()) {
    out.labels = (out.draws.array() > *threshold).cast<int>().matrix();
  }
  return out;
}

std::string summary(const FittedBkp &model) {
  return detail::format_summary(model, "Beta Kernel Process (BKP) Model", {});
}

} // namespace bkp

//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "bkp/dkp.hpp"

#include <utility>

#include <fmt/format.h>

#include "bkp/errors.hpp"
#include "bkp/numerics.hpp"

namespace bkp {

FittedDkp::FittedDkp(Matrix x_unit, InputBounds bounds, Matrix counts,
                     KernelSpec kernel, PriorSpec prior, LossKind loss_kind,
                     double loss_min, bool theta_user_fixed,
                     std::uint64_t seed, std::vector<StartRecord> starts)
    : KernelModelBase(
          detail::make_count_table(std::move(x_unit), std::move(counts)),
          std::move(bounds), std::move(kernel), std::move(prior), loss_kind,
          loss_min, theta_user_fixed, seed, std::move(starts)) { }

FittedDkp fit_dkp(const DkpDataset &data, const FitOptions &options) {
  data.validate();
  Matrix x_unit = normalize_inputs(data.x, data.bounds);
  auto table = detail::make_count_table(x_unit, data.counts);
  auto tuned = detail::tune(table, options, false);
  return FittedDkp(std::move(x_unit), data.bounds, data.counts,
                   KernelSpec { options.kernel, std::move(tuned.gamma) },
                   options.prior, options.loss, tuned.loss, tuned.user_fixed,
                   options.seed, std::move(tuned.starts));
}

Vector posterior_at_dkp(const FittedDkp &model, const VectorRef &x) {
  if (x.size() != model.dim())
    throw DomainError("query point has the wrong dimension");
  return model.posterior_alphas(x.transpose()).row(0).transpose();
}

int argmax_class(const VectorRef &v) {
  int best = 0;
  for (Eigen::Index s = 1; s < v.size(); ++s) {
    if (v[s] > v[best])
      best = static_cast<int>(s);
  }
  return best;
}

DirichletSummary summarize_dirichlet(const VectorRef &alpha, double ci_level) {
  if (!(ci_level > 0 && ci_level < 1))
    throw DomainError("ci_level must lie in (0, 1)");
  const Eigen::Index q = alpha.size();
  const double total = alpha.sum();
  DirichletSummary out { alpha, Vector(q), Vector(q), Vector(q), Vector(q),
                         std::nullopt };
  for (Eigen::Index s = 0; s < q; ++s) {
    const double mean = alpha[s] / total;
    const double rest = total - alpha[s];
    out.mean[s] = mean;
    out.variance[s] = mean * (1 - mean) / (total + 1);
    out.lower[s] = beta_quantile((1 - ci_level) / 2, alpha[s], rest);
    out.upper[s] = beta_quantile((1 + ci_level) / 2, alpha[s], rest);
  }
  return out;
}

std::vector<DirichletSummary> predict_dkp(const FittedDkp &model,
                                          const MatrixRef &xnew,
                                          double ci_level) {
  const Matrix alphas = model.posterior_alphas(xnew);
  const bool labelled = model.single_trial();
  std::vector<DirichletSummary> out;
  out.reserve(static_cast<std::size_t>(alphas.rows()));
  for (Eigen::Index j = 0; j < alphas.rows(); ++j) {
    auto s = summarize_dirichlet(alphas.row(j).transpose(), ci_level);
    if (labelled)
      s.label = argmax_class(s.mean);
    out.push_back(std::move(s));
  }
  return out;
}

DkpSimulation simulate_dkp(const FittedDkp &model, const MatrixRef &xnew,
                           int n_sim, std::uint64_t seed, bool map_labels) {
  if (n_sim < 1)
    throw DomainError("n_sim must be at least 1");
  const Matrix alphas = model.posterior_alphas(xnew);
  const Eigen::Index q = alphas.cols();
  DkpSimulation out;
  out.draws.reserve(static_cast<std::size_t>(alphas.rows()));
  if (map_labels)
    out.labels = Eigen::MatrixXi(alphas.rows(), n_sim);
  std::vector<double> alpha(static_cast<std::size_t>(q));
  for (Eigen::Index j = 0; j < alphas.rows(); ++j) {
    for (Eigen::Index s = 0; s < q; ++s)
      alpha[s] = alphas(j, s);
    auto rng = detail::point_stream(seed, j);
    Matrix draws(n_sim, q);
    for (int r = 0; r < n_sim; ++r) {
      const auto p = sample_dirichlet(alpha, rng);
      for (Eigen::Index s = 0; s < q; ++s)
        draws(r, s) = p[s];
      if (map_labels)
        (*out.labels)(j, r) = argmax_class(draws.row(r).transpose());
    }
    out.draws.push_back(std::move(draws));
  }
  return out;
}

std::string summary(const FittedDkp &model) {
  return detail::format_summary(
      model, "Dirichlet Kernel Process (DKP) Model",
      { fmt::format("Number of classes (q):       {}", model.classes()) });
}

} // namespace bkp

//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "bkp/model.hpp"

#include <cmath>
#include <utility>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "bkp/errors.hpp"

namespace bkp {

KernelModelBase::KernelModelBase(detail::CountTable table, InputBounds bounds,
                                 KernelSpec kernel, PriorSpec prior,
                                 LossKind loss_kind, double loss_min,
                                 bool theta_user_fixed, std::uint64_t seed,
                                 std::vector<StartRecord> starts)
    : table_(std::move(table)), bounds_(std::move(bounds)),
      kernel_(std::move(kernel)), prior_(std::move(prior)),
      loss_kind_(loss_kind), loss_min_(loss_min),
      theta_user_fixed_(theta_user_fixed), seed_(seed),
      starts_(std::move(starts)) {
  if (bounds_.dim() != table_.dim())
    throw DataError("model bounds do not match the training dimension");
  kernel_.validate();
  if (kernel_.dim() != table_.dim())
    throw DomainError("kernel dimension does not match the training data");
  prior_.validate(table_.classes());
}

bool KernelModelBase::single_trial() const {
  return (table_.trials.array() == 1.0).all();
}

Matrix KernelModelBase::posterior_alphas(const MatrixRef &xnew) const {
  if (xnew.cols() != dim()) {
    throw DomainError(fmt::format(
        "query has {} columns but the model has {} input dimensions",
        xnew.cols(), dim()));
  }
  Matrix unit;
  try {
    unit = normalize_inputs(xnew, bounds_);
  } catch (const DataError &e) {
    throw DomainError(fmt::format("query point out of bounds: {}", e.what()));
  }
  return detail::posterior_alphas(table_, kernel_, prior_, unit);
}

namespace detail {
  TuningOutcome tune(const CountTable &table, const FitOptions &options,
                     bool binary) {
    const Eigen::Index d = table.dim();
    options.prior.validate(table.classes());
    const LooObjective objective(table, options.kernel, options.prior,
                                 options.loss, binary);

    if (options.theta) {
      const Vector &theta = *options.theta;
      if (theta.size() != 1 && theta.size() != d) {
        throw DomainError(
            fmt::format("theta has {} entries; expected 1 or {}", theta.size(),
                        d));
      }
      Vector gamma(d);
      for (Eigen::Index j = 0; j < d; ++j) {
        const double t = theta.size() == 1 ? theta[0] : theta[j];
        if (!std::isfinite(t) || t <= 0)
          throw DomainError(fmt::format("theta must be positive, got {}", t));
        gamma[j] = std::log10(t);
      }
      const double loss = objective(gamma);
      if (!std::isfinite(loss))
        throw NumericError("loss at the fixed theta is not finite");
      return { std::move(gamma), loss, true, {} };
    }

    OptimizerConfig config = options.optimizer;
    if (options.n_multi_start) {
      if (*options.n_multi_start < 1)
        throw DomainError("n_multi_start must be positive");
      config.n_starts = *options.n_multi_start;
    }
    RngStream rng(options.seed, 0);
    auto result = multistart_optimize(
        [&objective](const VectorRef &g) { return objective(g); }, d, config,
        rng);
    return { std::move(result.gamma), result.loss, false,
             std::move(result.starts) };
  }

  std::string format_summary(const KernelModelBase &model,
                             std::string_view title,
                             const std::vector<std::string> &extra) {
    const std::string rule(50, '-');
    const Vector theta = model.theta();
    std::vector<std::string> thetas;
    for (Eigen::Index j = 0; j < theta.size(); ++j)
      thetas.push_back(fmt::format("{:.4f}", theta[j]));

    std::string out;
    auto line = [&out](std::string_view text) {
      out.append(text);
      out.push_back('\n');
    };
    line(rule);
    const auto pad = title.size() < rule.size()
                         ? (rule.size() - title.size()) / 2
                         : std::size_t { 0 };
    line(std::string(pad, ' ') + std::string(title));
    line(rule);
    line(fmt::format("Number of observations (n):  {}", model.size()));
    line(fmt::format("Input dimensionality (d):    {}", model.dim()));
    for (const auto &e: extra)
      line(e);
    line(fmt::format("Kernel type:                 {}",
                     to_string(model.kernel().family)));
    line(fmt::format("Loss function used:          {}",
                     to_string(model.loss_kind())));
    line(fmt::format("Optimized kernel parameters: {}",
                     fmt::join(thetas, ", ")));
    line(fmt::format("Minimum achieved loss:       {:.5f}", model.loss_min()));
    line(model.theta_user_fixed()
             ? "Kernel parameters were fixed by the user (no optimization)."
             : "Kernel parameters were obtained by optimization.");
    line("");
    line("Prior specification:");
    line("  " + model.prior().describe(model.table().classes()));
    line(rule);
    return out;
  }
} // namespace detail

} // namespace bkp

//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef BKP_MODEL_HPP_
#define BKP_MODEL_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bkp/dataset.hpp"
#include "bkp/detail/count_model.hpp"
#include "bkp/kernels.hpp"
#include "bkp/priors.hpp"
#include "bkp/tuning.hpp"

namespace bkp {

struct FitOptions {
  KernelFamily kernel = KernelFamily::kGaussian;
  PriorSpec prior;
  LossKind loss = LossKind::kBrier;
  // Defaults to 10 d.
  std::optional<int> n_multi_start;
  // Length scales on the normalized scale; one entry is broadcast to every
  // dimension. When set, the search is skipped.
  std::optional<Vector> theta;
  std::uint64_t seed = 0;
  OptimizerConfig optimizer;
};

/**
 * State shared by fitted binomial and multinomial models: the normalized
 * count table, kernel, prior, and tuning outcome. Immutable once built.
 */
class KernelModelBase {
public:
  const detail::CountTable &table() const { return table_; }
  const InputBounds &bounds() const { return bounds_; }
  const KernelSpec &kernel() const { return kernel_; }
  const Vector &gamma() const { return kernel_.gamma; }
  Vector theta() const { return kernel_.theta(); }
  const PriorSpec &prior() const { return prior_; }
  LossKind loss_kind() const { return loss_kind_; }
  double loss_min() const { return loss_min_; }
  bool theta_user_fixed() const { return theta_user_fixed_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<StartRecord> &starts() const { return starts_; }

  Eigen::Index size() const { return table_.size(); }
  Eigen::Index dim() const { return table_.dim(); }

  // True when every training row carries a single trial.
  bool single_trial() const;

  // Posterior concentrations (p x q) at raw-scale query rows. Throws
  // DataError for rows outside the input bounds.
  Matrix posterior_alphas(const MatrixRef &xnew) const;

protected:
  KernelModelBase(detail::CountTable table, InputBounds bounds,
                  KernelSpec kernel, PriorSpec prior, LossKind loss_kind,
                  double loss_min, bool theta_user_fixed, std::uint64_t seed,
                  std::vector<StartRecord> starts);

private:
  detail::CountTable table_;
  InputBounds bounds_;
  KernelSpec kernel_;
  PriorSpec prior_;
  LossKind loss_kind_;
  double loss_min_;
  bool theta_user_fixed_;
  std::uint64_t seed_;
  std::vector<StartRecord> starts_;
};

namespace detail {
  struct TuningOutcome {
    Vector gamma;
    double loss;
    bool user_fixed;
    std::vector<StartRecord> starts;
  };

  TuningOutcome tune(const CountTable &table, const FitOptions &options,
                     bool binary);

  // Report block shared by both model kinds. `extra` lines follow the input
  // dimensionality line.
  std::string format_summary(const KernelModelBase &model,
                             std::string_view title,
                             const std::vector<std::string> &extra);

  // Simulation stream for query point j.
  inline RngStream point_stream(std::uint64_t seed, Eigen::Index j) {
    return RngStream(seed, static_cast<std::uint64_t>(j));
  }
} // namespace detail

} // namespace bkp

#endif // BKP_MODEL_HPP_

//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef BKP_TUNING_HPP_
#define BKP_TUNING_HPP_

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bkp/dataset.hpp"
#include "bkp/design.hpp"
#include "bkp/detail/count_model.hpp"
#include "bkp/kernels.hpp"
#include "bkp/numerics.hpp"
#include "bkp/priors.hpp"
#include "bkp/types.hpp"

namespace bkp {

std::string_view to_string(LossKind kind);
std::optional<LossKind> parse_loss_kind(std::string_view name);

// Worker threads used by multi-start searches: BKP_NUM_THREADS if set to a
// positive integer, otherwise every hardware thread.
unsigned default_thread_count();

/// \name Leave-one-out losses
/// All take log10 length scales `gamma` and raw-scale data.
/// @{

Vector loo_posterior_means(const VectorRef &gamma, const BkpDataset &data,
                           const PriorSpec &prior, KernelFamily family);

// n x q leave-one-out class means.
Matrix loo_posterior_means(const VectorRef &gamma, const DkpDataset &data,
                           const PriorSpec &prior, KernelFamily family);

double brier_loss(const VectorRef &gamma, const BkpDataset &data,
                  const PriorSpec &prior, KernelFamily family);
double log_loss(const VectorRef &gamma, const BkpDataset &data,
                const PriorSpec &prior, KernelFamily family);

// Multiclass forms; for q = 2 the Brier score counts both classes and is
// therefore twice the binary score.
double brier_loss(const VectorRef &gamma, const DkpDataset &data,
                  const PriorSpec &prior, KernelFamily family);
double log_loss(const VectorRef &gamma, const DkpDataset &data,
                const PriorSpec &prior, KernelFamily family);

double brier_from_means(const VectorRef &means, const VectorRef &y,
                        const VectorRef &m);
double log_loss_from_means(const VectorRef &means, const VectorRef &y,
                           const VectorRef &m);

/// @}

/**
 * Leave-one-out loss over gamma for one prepared dataset.
 *
 * Holds the normalized count table so repeated evaluations during the
 * search skip validation and normalization. Safe to call concurrently.
 */
class LooObjective {
public:
  LooObjective(detail::CountTable table, KernelFamily family, PriorSpec prior,
               LossKind kind, bool binary);

  double operator()(const VectorRef &gamma) const;

  Matrix loo_alphas(const VectorRef &gamma) const;

  const detail::CountTable &table() const { return table_; }

private:
  detail::CountTable table_;
  KernelFamily family_;
  PriorSpec prior_;
  LossKind kind_;
  bool binary_;
};

using LossFunction = std::function<double(const VectorRef &)>;

// Initial-start box for each of d log length scales.
std::vector<Interval> search_region_omega0(Eigen::Index d);

struct OptimizerConfig {
  // Zero selects 10 d starts.
  int n_starts = 0;
  // Empty selects search_region_omega0(d).
  std::vector<Interval> omega0;
  Interval omega { -10.0, 10.0 };
  int max_iter = 200;
  double rel_tol = 1e-8;
  double fd_step = 1e-4;
  int history = 10;
  // Zero selects default_thread_count().
  unsigned threads = 0;
};

struct LocalSearchResult {
  Vector x;
  double loss;
  double start_loss;
  int iterations = 0;
  int evaluations = 0;
  bool used_fallback = false;
  std::string status;
};

/**
 * Box-constrained limited-memory quasi-Newton search from `x0`.
 *
 * Gradients come from central differences (one-sided at active bounds).
 * Each step is a projected backtracking line search along the L-BFGS
 * direction restricted to free variables. If the line search fails, a
 * bounded Nelder-Mead pass is tried from the current point. Stops when the
 * relative loss decrease drops below `rel_tol`, when the projected gradient
 * vanishes, or after `max_iter` iterations. The returned loss never exceeds
 * the loss at the (projected) start.
 */
LocalSearchResult minimize_bounded(const LossFunction &loss,
                                   const VectorRef &x0, const VectorRef &lower,
                                   const VectorRef &upper,
                                   const OptimizerConfig &config);

struct StartRecord {
  Vector start;
  Vector terminal;
  double start_loss;
  double loss;
  int iterations;
  std::string status;
};

struct MultistartResult {
  Vector gamma;
  double loss;
  std::size_t best_start;
  std::vector<StartRecord> starts;
};

/**
 * Runs minimize_bounded from a Latin hypercube of starts in omega0 and keeps
 * the lowest terminal loss, ties going to the lowest start index. Starts are
 * searched in parallel; the result does not depend on thread scheduling.
 * Throws OptimizationError when no start yields a finite loss.
 */
MultistartResult multistart_optimize(const LossFunction &loss, Eigen::Index d,
                                     const OptimizerConfig &config,
                                     RngStream &rng);

} // namespace bkp

#endif // BKP_TUNING_HPP_

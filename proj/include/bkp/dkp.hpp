//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef BKP_DKP_HPP_
#define BKP_DKP_HPP_

#include <optional>
#include <string>
#include <vector>

#include "bkp/model.hpp"

namespace bkp {

/// Dirichlet kernel process fitted to multinomial data.
class FittedDkp: public KernelModelBase {
public:
  FittedDkp(Matrix x_unit, InputBounds bounds, Matrix counts,
            KernelSpec kernel, PriorSpec prior, LossKind loss_kind,
            double loss_min, bool theta_user_fixed, std::uint64_t seed,
            std::vector<StartRecord> starts = {});

  Eigen::Index classes() const { return table().classes(); }
  const Matrix &counts() const { return table().counts; }
};

struct DirichletSummary {
  Vector alpha_n;
  Vector mean;
  Vector variance;
  Vector lower;
  Vector upper;
  std::optional<int> label;
};

FittedDkp fit_dkp(const DkpDataset &data, const FitOptions &options = {});

Vector posterior_at_dkp(const FittedDkp &model, const VectorRef &x);

/// Per-class means, variances and marginal Beta(alpha_s, sum - alpha_s)
/// credible intervals. The MAP label (lowest index on ties) is attached only
/// when every training row holds a single observation.
std::vector<DirichletSummary> predict_dkp(const FittedDkp &model,
                                          const MatrixRef &xnew,
                                          double ci_level = 0.95);

DirichletSummary summarize_dirichlet(const VectorRef &alpha, double ci_level);

// Index of the largest entry, lowest index on ties.
int argmax_class(const VectorRef &v);

struct DkpSimulation {
  // draws[j] is n_sim x q for query point j.
  std::vector<Matrix> draws;
  // p x n_sim argmax of each drawn probability vector.
  std::optional<Eigen::MatrixXi> labels;
};

DkpSimulation simulate_dkp(const FittedDkp &model, const MatrixRef &xnew,
                           int n_sim, std::uint64_t seed, bool map_labels);

std::string summary(const FittedDkp &model);

} // namespace bkp

#endif // BKP_DKP_HPP_

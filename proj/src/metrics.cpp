//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "bkp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bkp/errors.hpp"

namespace bkp {

double roc_auc(const VectorRef &scores, const std::vector<int> &labels) {
  const auto n = static_cast<std::size_t>(scores.size());
  if (labels.size() != n)
    throw DomainError("roc_auc: scores and labels differ in length");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&scores](auto a, auto b) {
    return scores[static_cast<Eigen::Index>(a)]
           < scores[static_cast<Eigen::Index>(b)];
  });

  // Midranks, then the rank-sum form of the Mann-Whitney statistic.
  double rank_sum = 0;
  std::size_t n_pos = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    const double v = scores[static_cast<Eigen::Index>(order[i])];
    while (j < n && scores[static_cast<Eigen::Index>(order[j])] == v)
      ++j;
    const double mid = (static_cast<double>(i + j) + 1) / 2;
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] == 1) {
        rank_sum += mid;
        ++n_pos;
      }
    }
    i = j;
  }
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0)
    throw DomainError("roc_auc: both classes must be present");
  const double np = static_cast<double>(n_pos);
  return (rank_sum - np * (np + 1) / 2) / (np * static_cast<double>(n_neg));
}

double macro_ovr_auc(const MatrixRef &scores, const std::vector<int> &labels) {
  double total = 0;
  int used = 0;
  for (Eigen::Index s = 0; s < scores.cols(); ++s) {
    std::vector<int> binary(labels.size());
    std::transform(labels.begin(), labels.end(), binary.begin(),
                   [s](int c) { return c == s ? 1 : 0; });
    const auto pos = std::count(binary.begin(), binary.end(), 1);
    if (pos == 0 || pos == static_cast<long>(binary.size()))
      continue;
    total += roc_auc(scores.col(s), binary);
    ++used;
  }
  if (used == 0)
    throw DomainError("macro_ovr_auc: no class has both outcomes");
  return total / used;
}

double rmse(const VectorRef &a, const VectorRef &b) {
  if (a.size() != b.size() || a.size() == 0)
    throw DomainError("rmse: length mismatch");
  return std::sqrt((a - b).squaredNorm() / static_cast<double>(a.size()));
}

} // namespace bkp

//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef BKP_METRICS_HPP_
#define BKP_METRICS_HPP_

#include <vector>

#include "bkp/types.hpp"

namespace bkp {

/// Area under the ROC curve for 0/1 `labels` and real `scores`, computed as
/// the Mann-Whitney statistic with tied scores counted as one half. Throws
/// DomainError unless both classes are present.
double roc_auc(const VectorRef &scores, const std::vector<int> &labels);

// Mean of the one-vs-rest AUCs over classes present in `labels`; column s of
// `scores` scores class s.
double macro_ovr_auc(const MatrixRef &scores, const std::vector<int> &labels);

double rmse(const VectorRef &a, const VectorRef &b);

} // namespace bkp

#endif // BKP_METRICS_HPP_

//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef BKP_TYPES_HPP_
#define BKP_TYPES_HPP_

#include <Eigen/Dense>

namespace bkp {

// Row-major so that each observation is contiguous.
using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

using MatrixRef = Eigen::Ref<const Matrix>;
using VectorRef = Eigen::Ref<const Vector>;

} // namespace bkp

#endif // BKP_TYPES_HPP_

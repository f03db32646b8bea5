//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef BKP_KERNELS_HPP_
#define BKP_KERNELS_HPP_

#include <optional>
#include <string_view>
#include <vector>

#include "bkp/types.hpp"

namespace bkp {

enum class KernelFamily {
  kGaussian,
  kMatern32,
  kMatern52,
};

std::string_view to_string(KernelFamily family);
std::optional<KernelFamily> parse_kernel_family(std::string_view name);

/**
 * Kernel family plus per-dimension log10 length scales.
 *
 * The length scales act on inputs already mapped to the unit hypercube, so
 * theta_j = 10^gamma_j is a fraction of the j-th input range.
 */
struct KernelSpec {
  KernelFamily family = KernelFamily::kGaussian;
  Vector gamma;

  Vector theta() const;
  Eigen::Index dim() const { return gamma.size(); }

  // Throws DomainError for non-finite gamma.
  void validate() const;
};

double scaled_distance(const VectorRef &x, const VectorRef &x2,
                       const VectorRef &theta);

// Squared form; the Gaussian kernel consumes it directly.
double scaled_sq_distance(const VectorRef &x, const VectorRef &x2,
                          const VectorRef &theta);

double kernel_eval(KernelFamily family, double h);

// Kernel value from a squared scaled distance.
double kernel_from_sq(KernelFamily family, double h2);

Vector kernel_vector(const KernelSpec &spec, const MatrixRef &train,
                     const VectorRef &x);

Matrix kernel_matrix(const KernelSpec &spec, const MatrixRef &a,
                     const MatrixRef &b);

} // namespace bkp

#endif // BKP_KERNELS_HPP_

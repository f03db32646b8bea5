//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef BKP_PRIORS_HPP_
#define BKP_PRIORS_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bkp/types.hpp"

namespace bkp {

enum class PriorStrategy {
  kNoninformative,
  kFixed,
  kAdaptive,
};

std::string_view to_string(PriorStrategy strategy);
std::optional<PriorStrategy> parse_prior_strategy(std::string_view name);

/**
 * Prior configuration shared by the binomial and multinomial models.
 *
 * `p0` holds the prior mean: a single success probability for binomial data
 * (default 0.5) or one entry per class for multinomial data (default
 * uniform). An empty vector selects the default.
 */
struct PriorSpec {
  PriorStrategy strategy = PriorStrategy::kNoninformative;
  double r0 = 2;
  std::vector<double> p0;

  // Prior mean vector for q classes. For q = 2 a scalar p0 expands to
  // (p0, 1 - p0). Throws DomainError on an invalid configuration.
  std::vector<double> class_means(Eigen::Index q) const;

  void validate(Eigen::Index q) const;

  // Human-readable one-liner, e.g. "Fixed prior: Beta(1, 1)".
  std::string describe(Eigen::Index q) const;
};

// Total kernel mass below which the adaptive prior is replaced by the
// noninformative one.
inline constexpr double kMinKernelMass = 1e-10;

// Floor applied to adaptive prior shapes so the posterior stays proper when
// every nearby observation is a pure success or pure failure.
inline constexpr double kMinPriorShape = 1e-10;

struct BetaShapes {
  double alpha;
  double beta;
};

BetaShapes prior_bkp(const PriorSpec &spec, const VectorRef &kvec,
                     const VectorRef &y, const VectorRef &m);

Vector prior_dkp(const PriorSpec &spec, const VectorRef &kvec,
                 const MatrixRef &counts);

/**
 * Prior concentration from precomputed kernel sums.
 *
 * `kernel_mass` is the sum of kernel weights; `weighted_props[s]` is the sum
 * of k_i * Y_is / m_i. `class_means` comes from PriorSpec::class_means.
 * Writes q entries to `out`.
 */
void prior_from_sums(const PriorSpec &spec,
                     std::span<const double> class_means, double kernel_mass,
                     std::span<const double> weighted_props,
                     std::span<double> out);

} // namespace bkp

#endif // BKP_PRIORS_HPP_

//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef BKP_NUMERICS_HPP_
#define BKP_NUMERICS_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace bkp {

/**
 * Reproducible pseudo-random stream.
 *
 * A stream is keyed by (seed, stream_index); the same key yields the same
 * sequence on every platform because all variate transforms are implemented
 * here rather than taken from <random>. Parallel callers take distinct stream
 * indices instead of sharing one stream.
 *
 * The generator is xoshiro256** with its state expanded from the key through
 * splitmix64.
 */
class RngStream {
public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_index = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_index() const noexcept { return stream_index_; }

  std::uint64_t next_u64() noexcept;

  // Uniform on the open interval (0, 1).
  double uniform() noexcept;

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t uniform_index(std::uint64_t n) noexcept;

  // Uniform integer in [lo, hi].
  long uniform_int(long lo, long hi) noexcept;

  double normal() noexcept;

private:
  std::uint64_t seed_;
  std::uint64_t stream_index_;
  std::uint64_t state_[4];
  double spare_normal_ = 0;
  bool has_spare_ = false;
};

double log_gamma(double x);

double log_beta(double a, double b);

// Standard normal CDF.
double std_normal_cdf(double z);

// Regularized incomplete beta function I_x(a, b).
double reg_inc_beta(double x, double a, double b);

// Density of Beta(a, b) at x.
double beta_pdf(double x, double a, double b);

// Inverse of reg_inc_beta in x. Throws NumericError if the iteration cap is
// hit without meeting the tolerance.
double beta_quantile(double p, double a, double b);

double sample_gamma(double shape, RngStream &rng);

// log of a Gamma(shape, 1) draw; finite even when the draw itself would
// underflow (shape << 1).
double sample_log_gamma(double shape, RngStream &rng);

double sample_beta(double a, double b, RngStream &rng);

std::vector<double> sample_dirichlet(std::span<const double> alpha,
                                     RngStream &rng);

long sample_binomial(long m, double p, RngStream &rng);

std::vector<long> sample_multinomial(long m, std::span<const double> probs,
                                     RngStream &rng);

// Fisher-Yates permutation of 0..n-1.
std::vector<std::size_t> random_permutation(std::size_t n, RngStream &rng);

} // namespace bkp

#endif // BKP_NUMERICS_HPP_

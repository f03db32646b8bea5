//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef BKP_DESIGN_HPP_
#define BKP_DESIGN_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "bkp/dataset.hpp"
#include "bkp/numerics.hpp"
#include "bkp/types.hpp"

namespace bkp {

using Interval = std::pair<double, double>;

/**
 * Random-permutation Latin hypercube of n points in d dimensions.
 *
 * Column j is split into n equal-width strata of bounds[j]; every stratum
 * holds exactly one point, jittered uniformly inside it.
 */
Matrix latin_hypercube(Eigen::Index n, Eigen::Index d,
                       std::span<const Interval> bounds, RngStream &rng);

// Logistic curve with slope 3.
double true_pi1(double x);

// Damped oscillation around 1/2.
double true_pi2(double x);

// Probit-transformed, rescaled Goldstein-Price surface on [0,1]^2. Zero on
// the pocket near (0.5, 0.25) where the log argument is nonpositive.
double true_pi3(double x1, double x2);

double true_pi4(double x1, double x2);

struct LabeledPoints {
  Matrix x;
  std::vector<int> labels;
};

/// Two interleaved spirals, radius 0.1 + 1.5 t and angle 2 pi cycles t, the
/// second arm rotated by pi. Gaussian noise with standard deviation `sd` is
/// added and the result clipped to [-1.7, 1.7]^2. Rows are shuffled.
LabeledPoints two_spirals(Eigen::Index n, double cycles, double sd,
                          RngStream &rng);

inline constexpr double kSpiralExtent = 1.7;

/// \name Benchmark datasets
/// Each generator is deterministic in its seed.
/// @{

// n LHD sites on [-2, 2], m ~ U{1..100}, y ~ Bin(m, pi1).
BkpDataset make_pi1_data(Eigen::Index n, std::uint64_t seed);

// As make_pi1_data with pi2.
BkpDataset make_pi2_data(Eigen::Index n, std::uint64_t seed);

// n LHD sites on [0,1]^2, m ~ U{1..100}, y ~ Bin(m, pi3).
BkpDataset make_goldstein_data(Eigen::Index n, std::uint64_t seed);

// Three classes (pi1/2, pi2/2, rest) on [-2, 2], m ~ U{1..150}.
DkpDataset make_multi1d_data(Eigen::Index n, std::uint64_t seed);

// Three classes (pi3/2, pi4/2, rest) on [0,1]^2, m ~ U{1..150}.
DkpDataset make_multi2d_data(Eigen::Index n, std::uint64_t seed);

// Binary two-spirals data (m = 1) with bounds [-1.7, 1.7]^2.
BkpDataset make_spirals_data(Eigen::Index n, double cycles, double sd,
                             std::uint64_t seed);

/// @}

std::array<double, 3> multi1d_probabilities(double x);
std::array<double, 3> multi2d_probabilities(double x1, double x2);

struct IrisRecord {
  double sepal_length;
  double sepal_width;
  int species; // 0 setosa, 1 versicolor, 2 virginica
};

// Fisher's iris table restricted to the two sepal measurements.
std::span<const IrisRecord> iris_records();

// Iris sepal features as one-hot three-class data, bounds [4.2,8] x [1.9,4.5].
DkpDataset iris_sepal_data();

} // namespace bkp

#endif // BKP_DESIGN_HPP_

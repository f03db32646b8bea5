//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "bkp/design.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "bkp/errors.hpp"

namespace bkp {
namespace {
  constexpr Interval kSymmetricTwo { -2.0, 2.0 };
  constexpr Interval kUnit { 0.0, 1.0 };

  BkpDataset binomial_data(Eigen::Index n, std::span<const Interval> box,
                           long max_trials, auto &&prob, std::uint64_t seed) {
    RngStream rng(seed);
    const auto d = static_cast<Eigen::Index>(box.size());
    BkpDataset data;
    data.x = latin_hypercube(n, d, box, rng);
    std::vector<double> lo, hi;
    for (const auto &[a, b]: box) {
      lo.push_back(a);
      hi.push_back(b);
    }
    data.bounds = InputBounds(lo, hi);
    data.m.resize(n);
    data.y.resize(n);
    for (Eigen::Index i = 0; i < n; ++i)
      data.m[i] = static_cast<double>(rng.uniform_int(1, max_trials));
    for (Eigen::Index i = 0; i < n; ++i) {
      const double p = prob(data.x.row(i));
      data.y[i] = static_cast<double>(
          sample_binomial(static_cast<long>(data.m[i]), p, rng));
    }
    return data;
  }

  DkpDataset multinomial_data(Eigen::Index n, std::span<const Interval> box,
                              long max_trials, auto &&probs,
                              std::uint64_t seed) {
    RngStream rng(seed);
    const auto d = static_cast<Eigen::Index>(box.size());
    DkpDataset data;
    data.x = latin_hypercube(n, d, box, rng);
    std::vector<double> lo, hi;
    for (const auto &[a, b]: box) {
      lo.push_back(a);
      hi.push_back(b);
    }
    data.bounds = InputBounds(lo, hi);
    std::vector<long> m(static_cast<std::size_t>(n));
    for (auto &mi: m)
      mi = rng.uniform_int(1, max_trials);
    data.counts.resize(n, 3);
    for (Eigen::Index i = 0; i < n; ++i) {
      const std::array<double, 3> p = probs(data.x.row(i));
      const auto c = sample_multinomial(m[static_cast<std::size_t>(i)], p, rng);
      for (Eigen::Index s = 0; s < 3; ++s)
        data.counts(i, s) = static_cast<double>(c[static_cast<std::size_t>(s)]);
    }
    return data;
  }
} // namespace

Matrix latin_hypercube(Eigen::Index n, Eigen::Index d,
                       std::span<const Interval> bounds, RngStream &rng) {
  if (n < 1 || d < 1)
    throw DomainError(fmt::format(
        "latin_hypercube: need n >= 1 and d >= 1 (n={}, d={})", n, d));
  if (static_cast<Eigen::Index>(bounds.size()) != d) {
    throw DomainError(fmt::format(
        "latin_hypercube: {} intervals for {} dimensions", bounds.size(), d));
  }
  for (const auto &[lo, hi]: bounds) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
      throw DomainError(fmt::format(
          "latin_hypercube: degenerate interval [{}, {}]", lo, hi));
  }

  Matrix out(n, d);
  const auto nn = static_cast<std::size_t>(n);
  for (Eigen::Index j = 0; j < d; ++j) {
    const auto perm = random_permutation(nn, rng);
    const auto [lo, hi] = bounds[static_cast<std::size_t>(j)];
    const double width = (hi - lo) / static_cast<double>(n);
    for (std::size_t i = 0; i < nn; ++i) {
      const double v =
          lo + (static_cast<double>(perm[i]) + rng.uniform()) * width;
      // Keep the point inside its own stratum despite rounding.
      const double s_lo = lo + static_cast<double>(perm[i]) * width;
      const double s_hi = std::min(hi, s_lo + width);
      out(static_cast<Eigen::Index>(i), j) =
          std::clamp(v, s_lo, std::nextafter(s_hi, s_lo));
    }
  }
  return out;
}

double true_pi1(double x) {
  return 1 / (1 + std::exp(-3 * x));
}

double true_pi2(double x) {
  const double e = std::exp(-x);
  return 0.5 * (1 + std::exp(-x * x) * std::cos(10 * (1 - e) / (1 + e)));
}

double true_pi3(double x1, double x2) {
  if (!(x1 >= 0 && x1 <= 1 && x2 >= 0 && x2 <= 1))
    throw DomainError(fmt::format(
        "true_pi3: ({}, {}) lies outside the unit square", x1, x2));
  const double u = 4 * x1 - 2, v = 4 * x2 - 2;
  const double a1 = 4 * x1 + 4 * x2 - 3;
  const double a =
      a1 * a1 * (75 - 56 * (x1 + x2) + 3 * u * u + 6 * u * v + 3 * v * v);
  const double b1 = 8 * x1 - 12 * x2 + 2;
  const double b = b1 * b1
                   * (-14 - 128 * x1 + 12 * u * u + 192 * x2 - 36 * u * v
                      + 27 * v * v);
  // The log argument is nonpositive on a small pocket around the
  // Goldstein-Price minimum; f -> -inf there, so the limit 0 is returned.
  const double arg = (1 + a) * (30 + b) - 8.6928;
  if (arg <= 0)
    return 0;
  return std_normal_cdf(std::log(arg) / 2.4269);
}

double true_pi4(double x1, double x2) {
  return std::sin(std::numbers::pi * x1)
         * std::cos(std::numbers::pi * (x2 - 0.5));
}

std::array<double, 3> multi1d_probabilities(double x) {
  const double p1 = true_pi1(x) / 2, p2 = true_pi2(x) / 2;
  return { p1, p2, 1 - p1 - p2 };
}

std::array<double, 3> multi2d_probabilities(double x1, double x2) {
  const double p1 = true_pi3(x1, x2) / 2, p2 = true_pi4(x1, x2) / 2;
  return { p1, p2, 1 - p1 - p2 };
}

LabeledPoints two_spirals(Eigen::Index n, double cycles, double sd,
                          RngStream &rng) {
  if (n < 2)
    throw DomainError("two_spirals: need at least two points");
  if (!(cycles > 0) || !(sd >= 0))
    throw DomainError("two_spirals: cycles must be positive, sd nonnegative");

  const Eigen::Index n0 = (n + 1) / 2;
  LabeledPoints raw { Matrix(n, 2), std::vector<int>(static_cast<std::size_t>(n)) };
  Eigen::Index row = 0;
  for (int cls = 0; cls < 2; ++cls) {
    const Eigen::Index count = cls == 0 ? n0 : n - n0;
    const double offset = cls == 0 ? 0.0 : std::numbers::pi;
    for (Eigen::Index k = 0; k < count; ++k, ++row) {
      const double t =
          (static_cast<double>(k) + rng.uniform()) / static_cast<double>(count);
      const double radius = 0.1 + 1.5 * t;
      const double angle = 2 * std::numbers::pi * cycles * t + offset;
      double px = radius * std::cos(angle), py = radius * std::sin(angle);
      if (sd > 0) {
        px += sd * rng.normal();
        py += sd * rng.normal();
      }
      raw.x(row, 0) = std::clamp(px, -kSpiralExtent, kSpiralExtent);
      raw.x(row, 1) = std::clamp(py, -kSpiralExtent, kSpiralExtent);
      raw.labels[static_cast<std::size_t>(row)] = cls;
    }
  }

  const auto perm = random_permutation(static_cast<std::size_t>(n), rng);
  LabeledPoints out { Matrix(n, 2), std::vector<int>(static_cast<std::size_t>(n)) };
  for (std::size_t i = 0; i < perm.size(); ++i) {
    out.x.row(static_cast<Eigen::Index>(i)) =
        raw.x.row(static_cast<Eigen::Index>(perm[i]));
    out.labels[i] = raw.labels[perm[i]];
  }
  return out;
}

BkpDataset make_pi1_data(Eigen::Index n, std::uint64_t seed) {
  const std::array box { kSymmetricTwo };
  return binomial_data(
      n, box, 100, [](const auto &x) { return true_pi1(x[0]); }, seed);
}

BkpDataset make_pi2_data(Eigen::Index n, std::uint64_t seed) {
  const std::array box { kSymmetricTwo };
  return binomial_data(
      n, box, 100, [](const auto &x) { return true_pi2(x[0]); }, seed);
}

BkpDataset make_goldstein_data(Eigen::Index n, std::uint64_t seed) {
  const std::array box { kUnit, kUnit };
  return binomial_data(
      n, box, 100, [](const auto &x) { return true_pi3(x[0], x[1]); }, seed);
}

DkpDataset make_multi1d_data(Eigen::Index n, std::uint64_t seed) {
  const std::array box { kSymmetricTwo };
  return multinomial_data(
      n, box, 150, [](const auto &x) { return multi1d_probabilities(x[0]); },
      seed);
}

DkpDataset make_multi2d_data(Eigen::Index n, std::uint64_t seed) {
  const std::array box { kUnit, kUnit };
  return multinomial_data(
      n, box, 150,
      [](const auto &x) { return multi2d_probabilities(x[0], x[1]); }, seed);
}

BkpDataset make_spirals_data(Eigen::Index n, double cycles, double sd,
                             std::uint64_t seed) {
  RngStream rng(seed);
  auto pts = two_spirals(n, cycles, sd, rng);
  BkpDataset data;
  data.x = std::move(pts.x);
  data.bounds = InputBounds({ -kSpiralExtent, -kSpiralExtent },
                            { kSpiralExtent, kSpiralExtent });
  data.y.resize(n);
  for (Eigen::Index i = 0; i < n; ++i)
    data.y[i] = pts.labels[static_cast<std::size_t>(i)];
  data.m = Vector::Ones(n);
  return data;
}

DkpDataset iris_sepal_data() {
  const auto records = iris_records();
  const auto n = static_cast<Eigen::Index>(records.size());
  DkpDataset data;
  data.x.resize(n, 2);
  data.counts = Matrix::Zero(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto &r = records[static_cast<std::size_t>(i)];
    data.x(i, 0) = r.sepal_length;
    data.x(i, 1) = r.sepal_width;
    data.counts(i, r.species) = 1;
  }
  data.bounds = InputBounds({ 4.2, 1.9 }, { 8.0, 4.5 });
  return data;
}

} // namespace bkp

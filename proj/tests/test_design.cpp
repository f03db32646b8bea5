//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "bkp/dataset.hpp"
#include "bkp/design.hpp"
#include "bkp/errors.hpp"

using bkp::Interval;
using bkp::Matrix;
using bkp::RngStream;

TEST_CASE("normalize_inputs") {
  const bkp::InputBounds sym({ -2.0 }, { 2.0 });
  Matrix x(3, 1);
  x << 0, -2, 2;
  const Matrix u = bkp::normalize_inputs(x, sym);
  CHECK(u(0, 0) == 0.5);
  CHECK(u(1, 0) == 0.0);
  CHECK(u(2, 0) == 1.0);

  Matrix p(1, 2);
  p << 0.3, 0.7;
  const Matrix same = bkp::normalize_inputs(p, bkp::InputBounds::unit(2));
  CHECK(same(0, 0) == 0.3);
  CHECK(same(0, 1) == 0.7);
}

TEST_CASE("normalize_inputs tolerates rounding at the faces only") {
  const bkp::InputBounds unit = bkp::InputBounds::unit(1);
  Matrix edge(1, 1);
  edge << 1 + 1e-13;
  CHECK_NOTHROW(bkp::normalize_inputs(edge, unit));
  Matrix out(2, 1);
  out << 0.5, 1.01;
  try {
    static_cast<void>(bkp::normalize_inputs(out, unit));
    FAIL("expected DataError");
  } catch (const bkp::DataError &e) {
    CHECK(std::string(e.what()).find("row 2, column 1") != std::string::npos);
  }
}

TEST_CASE("normalize/denormalize round trip") {
  const bkp::InputBounds b({ -3.0, 10.0, 0.0 }, { 5.0, 10.5, 1e-3 });
  RngStream rng(1);
  Matrix x(50, 3);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) {
      const double lo = b.lower()[j], hi = b.upper()[j];
      x(i, j) = lo + (hi - lo) * rng.uniform();
    }
  }
  const Matrix back = bkp::denormalize_inputs(bkp::normalize_inputs(x, b), b);
  CHECK((back - x).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("InputBounds rejects degenerate boxes") {
  CHECK_THROWS_AS(bkp::InputBounds({ 1.0 }, { 1.0 }), bkp::DomainError);
  CHECK_THROWS_AS(bkp::InputBounds({ 2.0 }, { 1.0 }), bkp::DomainError);
  CHECK_THROWS_AS(bkp::InputBounds({ 0.0, 0.0 }, { 1.0 }), bkp::DomainError);
}

TEST_CASE("latin_hypercube puts one point in each stratum") {
  for (const auto &[n, d]: std::vector<std::pair<int, int>> {
           { 4, 1 }, { 10, 2 }, { 37, 5 } }) {
    std::vector<Interval> box(static_cast<std::size_t>(d), Interval { -1.5, 4 });
    RngStream rng(static_cast<std::uint64_t>(n * d));
    const Matrix x = bkp::latin_hypercube(n, d, box, rng);
    REQUIRE(x.rows() == n);
    REQUIRE(x.cols() == d);
    for (int j = 0; j < d; ++j) {
      std::vector<int> hits(static_cast<std::size_t>(n), 0);
      for (int i = 0; i < n; ++i) {
        const double u = (x(i, j) + 1.5) / 5.5;
        const int k = static_cast<int>(std::floor(u * n));
        REQUIRE((k >= 0 && k < n));
        ++hits[static_cast<std::size_t>(k)];
      }
      CHECK(std::all_of(hits.begin(), hits.end(),
                        [](int h) { return h == 1; }));
    }
  }
}

TEST_CASE("latin_hypercube degenerate and invalid input") {
  const std::array<Interval, 3> box { Interval { 0, 1 }, Interval { 2, 3 },
                                      Interval { -1, 0 } };
  RngStream rng(2);
  const Matrix one = bkp::latin_hypercube(1, 3, box, rng);
  for (int j = 0; j < 3; ++j) {
    CHECK(one(0, j) >= box[j].first);
    CHECK(one(0, j) <= box[j].second);
  }
  const std::array<Interval, 1> flat { Interval { 1, 1 } };
  CHECK_THROWS_AS(bkp::latin_hypercube(3, 1, flat, rng), bkp::DomainError);
}

TEST_CASE("latin_hypercube is deterministic per stream") {
  const std::array<Interval, 2> box { Interval { 0, 1 }, Interval { 0, 1 } };
  RngStream a(7), b(7);
  CHECK(bkp::latin_hypercube(20, 2, box, a) == bkp::latin_hypercube(20, 2, box, b));
}

TEST_CASE("true probability functions") {
  CHECK(bkp::true_pi1(0) == 0.5);
  CHECK(std::abs(bkp::true_pi1(1) - 0.9525741268224332) <= 1e-15);
  CHECK(bkp::true_pi1(800) == doctest::Approx(1));

  CHECK(bkp::true_pi2(0) == 1.0);
  const double x = 2;
  const double oracle =
      0.5 * (1 + std::exp(-x * x)
                     * std::cos(10 * (1 - std::exp(-x)) / (1 + std::exp(-x))));
  CHECK(std::abs(bkp::true_pi2(2) - oracle) <= 1e-12);
  CHECK(std::abs(bkp::true_pi2(2) - 0.5021593993643704) <= 1e-12);
  for (double t = -2; t <= 2; t += 0.01) {
    CHECK(bkp::true_pi2(t) >= 0);
    CHECK(bkp::true_pi2(t) <= 1);
  }

  CHECK(std::abs(bkp::true_pi3(0.5, 0.5) - 0.9957286277177863) <= 1e-12);
  CHECK(std::abs(bkp::true_pi3(0.2, 0.7) - 0.999993099664962) <= 1e-12);
  for (double a = 0; a <= 1; a += 0.05) {
    for (double b = 0; b <= 1; b += 0.05) {
      const double p = bkp::true_pi3(a, b);
      CHECK((p >= 0 && p <= 1));
    }
  }
  // Just outside the pocket where the log argument is nonpositive.
  CHECK(bkp::true_pi3(0.3, 0.25) > 0);
  CHECK(bkp::true_pi3(0.5, 0.25) == 0);
  CHECK_THROWS_AS(bkp::true_pi3(1.2, 0.5), bkp::DomainError);

  CHECK(bkp::true_pi4(0.5, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(bkp::true_pi4(0, 0.5)) <= 1e-15);
  CHECK(bkp::true_pi4(0.25, 0.25) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("goldstein surface at the centre") {
  // Polynomial terms evaluated term by term at x = (0.5, 0.5).
  const double x1 = 0.5, x2 = 0.5;
  const double s1 = 4 * x1 - 2, s2 = 4 * x2 - 2;
  const double a = std::pow(4 * x1 + 4 * x2 - 3, 2)
                   * (75 - 56 * (x1 + x2) + 3 * std::pow(s1, 2) + 6 * s1 * s2
                      + 3 * std::pow(s2, 2));
  const double b = std::pow(8 * x1 - 12 * x2 + 2, 2)
                   * (-14 - 128 * x1 + 12 * std::pow(s1, 2) + 192 * x2
                      - 36 * s1 * s2 + 27 * std::pow(s2, 2));
  CHECK(a == 19);
  CHECK(b == 0);
  const double f = std::log((1 + a) * (30 + b) - 8.6928) / 2.4269;
  CHECK(std::abs(f - 2.629830516013339) <= 1e-12);
  CHECK(std::abs(bkp::true_pi3(0.5, 0.5) - bkp::std_normal_cdf(f)) <= 1e-12);
}

TEST_CASE("two_spirals without noise lies on the curve") {
  RngStream rng(31);
  const auto pts = bkp::two_spirals(250, 2, 0, rng);
  REQUIRE(pts.x.rows() == 250);
  int zeros = 0;
  for (Eigen::Index i = 0; i < 250; ++i) {
    const int cls = pts.labels[static_cast<std::size_t>(i)];
    zeros += cls == 0;
    const double r = pts.x.row(i).norm();
    const double t = (r - 0.1) / 1.5;
    REQUIRE((t >= 0 && t <= 1));
    const double angle = 2 * std::numbers::pi * 2 * t + (cls ? std::numbers::pi : 0);
    CHECK(std::abs(pts.x(i, 0) - r * std::cos(angle)) <= 1e-12);
    CHECK(std::abs(pts.x(i, 1) - r * std::sin(angle)) <= 1e-12);
  }
  CHECK(zeros == 125);
}

TEST_CASE("two_spirals balance and clipping") {
  for (const int n: { 250, 251, 2 }) {
    RngStream rng(static_cast<std::uint64_t>(n));
    const auto pts = bkp::two_spirals(n, 2, 0.05, rng);
    const auto ones = std::count(pts.labels.begin(), pts.labels.end(), 1);
    CHECK(std::abs(static_cast<long>(n - ones) - ones) <= 1);
    CHECK(pts.x.cwiseAbs().maxCoeff() <= 1.7);
  }
}

TEST_CASE("benchmark generators are deterministic and valid") {
  const auto a = bkp::make_pi1_data(7, 1), b = bkp::make_pi1_data(7, 1);
  CHECK(a.x == b.x);
  CHECK(a.y == b.y);
  CHECK(a.m == b.m);
  CHECK_NOTHROW(a.validate());
  CHECK(a.m.maxCoeff() <= 100);
  CHECK(a.m.minCoeff() >= 1);
  CHECK(bkp::make_pi1_data(7, 2).x != a.x);

  CHECK_NOTHROW(bkp::make_pi2_data(30, 4).validate());
  CHECK_NOTHROW(bkp::make_goldstein_data(40, 4).validate());
  const auto m1 = bkp::make_multi1d_data(30, 5);
  CHECK_NOTHROW(m1.validate());
  CHECK(m1.classes() == 3);
  CHECK(m1.counts.rowwise().sum().maxCoeff() <= 150);
  CHECK_NOTHROW(bkp::make_multi2d_data(30, 5).validate());

  const auto sp = bkp::make_spirals_data(250, 2, 0.05, 3);
  CHECK_NOTHROW(sp.validate());
  CHECK((sp.m.array() == 1).all());
}

TEST_CASE("multiclass truth functions are probability vectors") {
  for (double x = -2; x <= 2; x += 0.05) {
    const auto p = bkp::multi1d_probabilities(x);
    CHECK(p[0] + p[1] + p[2] == doctest::Approx(1).epsilon(1e-14));
    for (const double v: p)
      CHECK((v >= 0 && v <= 1));
  }
  for (double x = 0; x <= 1; x += 0.1) {
    for (double y = 0; y <= 1; y += 0.1) {
      const auto p = bkp::multi2d_probabilities(x, y);
      CHECK(p[0] + p[1] + p[2] == doctest::Approx(1).epsilon(1e-14));
    }
  }
}

TEST_CASE("iris sepal data") {
  const auto records = bkp::iris_records();
  REQUIRE(records.size() == 150);
  CHECK(records[0].sepal_length == 5.1);
  CHECK(records[0].sepal_width == 3.5);
  CHECK(records[0].species == 0);
  CHECK(records[149].sepal_length == 5.9);
  CHECK(records[149].sepal_width == 3.0);
  CHECK(records[149].species == 2);

  const auto data = bkp::iris_sepal_data();
  CHECK_NOTHROW(data.validate());
  CHECK(data.size() == 150);
  CHECK(data.dim() == 2);
  CHECK(data.classes() == 3);
  const Eigen::VectorXd per_class = data.counts.colwise().sum().transpose();
  CHECK(per_class[0] == 50);
  CHECK(per_class[1] == 50);
  CHECK(per_class[2] == 50);
}

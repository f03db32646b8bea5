//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "bkp/errors.hpp"
#include "bkp/numerics.hpp"
#include "bkp/priors.hpp"

using bkp::Matrix;
using bkp::PriorSpec;
using bkp::PriorStrategy;
using bkp::Vector;

namespace {
struct Instance {
  Vector k, y, m;
  Matrix counts; // (y, m - y)
};

Instance random_instance(bkp::RngStream &rng, Eigen::Index n) {
  Instance in { Vector(n), Vector(n), Vector(n), Matrix(n, 2) };
  for (Eigen::Index i = 0; i < n; ++i) {
    in.k[i] = rng.uniform();
    in.m[i] = static_cast<double>(rng.uniform_int(1, 20));
    in.y[i] = static_cast<double>(rng.uniform_int(0, static_cast<long>(in.m[i])));
    in.counts(i, 0) = in.y[i];
    in.counts(i, 1) = in.m[i] - in.y[i];
  }
  return in;
}
} // namespace

TEST_CASE("prior_bkp examples") {
  Vector k(2), y(2), m(2);
  k << 1, 1;
  y << 1, 2;
  m << 5, 5;
  const auto non = bkp::prior_bkp({}, k, y, m);
  CHECK(non.alpha == 1);
  CHECK(non.beta == 1);

  const auto fixed = bkp::prior_bkp({ PriorStrategy::kFixed, 2, { 0.5 } }, k, y, m);
  CHECK(fixed.alpha == 1);
  CHECK(fixed.beta == 1);

  const auto adaptive =
      bkp::prior_bkp({ PriorStrategy::kAdaptive, 2, {} }, k, y, m);
  CHECK(adaptive.alpha == doctest::Approx(1.2).epsilon(1e-15));
  CHECK(adaptive.beta == doctest::Approx(2.8).epsilon(1e-15));
}

TEST_CASE("adaptive prior falls back without kernel mass") {
  Vector k = Vector::Constant(3, 1e-12), y(3), m(3);
  y << 1, 0, 3;
  m << 2, 1, 3;
  const auto s = bkp::prior_bkp({ PriorStrategy::kAdaptive, 2, {} }, k, y, m);
  CHECK(s.alpha == 1);
  CHECK(s.beta == 1);
}

TEST_CASE("adaptive prior stays proper for pure neighbourhoods") {
  Vector k(2), y(2), m(2);
  k << 1, 0.5;
  y << 4, 2;
  m << 4, 2;
  const auto s = bkp::prior_bkp({ PriorStrategy::kAdaptive, 2, {} }, k, y, m);
  CHECK(s.alpha == doctest::Approx(3));
  CHECK(s.beta == bkp::kMinPriorShape);
}

TEST_CASE("prior_dkp examples") {
  Vector k(1);
  k << 0.7;
  Matrix counts(1, 3);
  counts << 2, 1, 0;
  const Vector non = bkp::prior_dkp({}, k, counts);
  CHECK((non.array() == 1).all());

  const PriorSpec fixed { PriorStrategy::kFixed, 0.1, { 1.0 / 3, 1.0 / 3, 1.0 / 3 } };
  const Vector f = bkp::prior_dkp(fixed, k, counts);
  for (Eigen::Index s = 0; s < 3; ++s)
    CHECK(f[s] == doctest::Approx(1.0 / 30).epsilon(1e-15));
}

TEST_CASE("binary and two-class priors agree for every strategy") {
  bkp::RngStream rng(19);
  const std::vector<PriorSpec> specs {
    {},
    { PriorStrategy::kFixed, 3.5, { 0.2 } },
    { PriorStrategy::kAdaptive, 1.7, {} },
  };
  for (int trial = 0; trial < 200; ++trial) {
    const auto in = random_instance(rng, 1 + trial % 9);
    for (const auto &spec: specs) {
      const auto b = bkp::prior_bkp(spec, in.k, in.y, in.m);
      const Vector d = bkp::prior_dkp(spec, in.k, in.counts);
      CHECK(std::abs(b.alpha - d[0]) <= 1e-15);
      CHECK(std::abs(b.beta - d[1]) <= 1e-15);
    }
  }
}

TEST_CASE("adaptive prior mass and convexity") {
  bkp::RngStream rng(20);
  const PriorSpec spec { PriorStrategy::kAdaptive, 2.5, {} };
  for (int trial = 0; trial < 300; ++trial) {
    const auto in = random_instance(rng, 2 + trial % 7);
    const Vector props = in.y.cwiseQuotient(in.m);
    const double lo = props.minCoeff(), hi = props.maxCoeff();
    if (lo == 0 || hi == 1)
      continue; // floored shapes, see kMinPriorShape
    const auto s = bkp::prior_bkp(spec, in.k, in.y, in.m);
    const double r = spec.r0 * in.k.sum();
    CHECK(s.alpha + s.beta == doctest::Approx(r).epsilon(1e-14));
    const double p = s.alpha / (s.alpha + s.beta);
    CHECK(p >= lo - 1e-14);
    CHECK(p <= hi + 1e-14);
  }
}

TEST_CASE("multiclass adaptive prior sums to r(x)") {
  bkp::RngStream rng(21);
  const PriorSpec spec { PriorStrategy::kAdaptive, 4, {} };
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 3 + trial % 5;
    Vector k(n);
    Matrix counts(n, 4);
    for (Eigen::Index i = 0; i < n; ++i) {
      k[i] = rng.uniform();
      for (Eigen::Index s = 0; s < 4; ++s)
        counts(i, s) = static_cast<double>(rng.uniform_int(1, 5));
    }
    const Vector a = bkp::prior_dkp(spec, k, counts);
    CHECK(a.sum() == doctest::Approx(spec.r0 * k.sum()).epsilon(1e-12));
  }
}

TEST_CASE("PriorSpec validation") {
  CHECK_THROWS_AS((PriorSpec { PriorStrategy::kFixed, -1, {} }.validate(2)),
                  bkp::DomainError);
  CHECK_THROWS_AS((PriorSpec { PriorStrategy::kFixed, 2, { 1.2 } }.validate(2)),
                  bkp::DomainError);
  CHECK_THROWS_AS(
      (PriorSpec { PriorStrategy::kFixed, 2, { 0.5, 0.6 } }.validate(2)),
      bkp::DomainError);
  CHECK_THROWS_AS(
      (PriorSpec { PriorStrategy::kFixed, 2, { 0.5, 0.5 } }.validate(3)),
      bkp::DomainError);
  CHECK_NOTHROW((PriorSpec { PriorStrategy::kFixed, 2, { 0.25 } }.validate(2)));
  const auto means = PriorSpec {}.class_means(4);
  CHECK(means.size() == 4);
  CHECK(means[0] == 0.25);
}

TEST_CASE("prior descriptions") {
  CHECK(PriorSpec {}.describe(2) == "Noninformative prior: Beta(1,1).");
  CHECK(PriorSpec { PriorStrategy::kFixed, 0.1, { 0.5 } }.describe(2)
        == "Fixed prior: Beta(0.05, 0.05) with r0 = 0.1, p0 = 0.5.");
  for (const auto s: { PriorStrategy::kNoninformative, PriorStrategy::kFixed,
                       PriorStrategy::kAdaptive })
    CHECK(bkp::parse_prior_strategy(bkp::to_string(s)) == s);
}

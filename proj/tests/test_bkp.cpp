//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <string>
#include <vector>

#include <doctest.h>

#include "bkp/bkp.hpp"
#include "bkp/design.hpp"
#include "bkp/errors.hpp"
#include "bkp/metrics.hpp"
#include "support/oracle.hpp"

using bkp::BkpDataset;
using bkp::FitOptions;
using bkp::KernelFamily;
using bkp::Matrix;
using bkp::PriorSpec;
using bkp::PriorStrategy;
using bkp::Vector;

namespace {
BkpDataset single_point(double y, double m) {
  BkpDataset d;
  d.x = Matrix::Constant(1, 1, 0.4);
  d.bounds = bkp::InputBounds::unit(1);
  d.y = Vector::Constant(1, y);
  d.m = Vector::Constant(1, m);
  return d;
}

FitOptions fixed_theta(double theta, PriorSpec prior = {},
                       KernelFamily family = KernelFamily::kGaussian) {
  FitOptions o;
  o.kernel = family;
  o.prior = std::move(prior);
  o.theta = Vector::Constant(1, theta);
  return o;
}

Matrix point(std::initializer_list<double> v) {
  Matrix p(1, static_cast<Eigen::Index>(v.size()));
  Eigen::Index j = 0;
  for (const double x: v)
    p(0, j++) = x;
  return p;
}

BkpDataset random_bkp(bkp::RngStream &rng, Eigen::Index n, Eigen::Index d,
                      long max_m) {
  BkpDataset data;
  data.x.resize(n, d);
  std::vector<double> lo, hi;
  for (Eigen::Index j = 0; j < d; ++j) {
    lo.push_back(-1 - j);
    hi.push_back(2 + j);
  }
  data.bounds = bkp::InputBounds(lo, hi);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      data.x(i, j) = lo[j] + (hi[j] - lo[j]) * rng.uniform();
  data.y.resize(n);
  data.m.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    data.m[i] = static_cast<double>(rng.uniform_int(1, max_m));
    data.y[i] =
        static_cast<double>(rng.uniform_int(0, static_cast<long>(data.m[i])));
  }
  return data;
}
} // namespace

TEST_CASE("posterior at a single training point") {
  const auto model = bkp::fit_bkp(single_point(3, 10), fixed_theta(0.3));
  const auto s = bkp::posterior_at(model, Vector::Constant(1, 0.4));
  CHECK(s.alpha == 4);
  CHECK(s.beta == 8);
}

TEST_CASE("posterior far from the data is the prior") {
  FitOptions o;
  o.theta = Vector::Constant(1, 1e-10);
  const auto model = bkp::fit_bkp(single_point(3, 10), o);
  const auto s = bkp::posterior_at(model, Vector::Constant(1, 0.9));
  CHECK(s.alpha == 1);
  CHECK(s.beta == 1);
}

TEST_CASE("posterior matches term-by-term summation") {
  bkp::RngStream rng(31);
  const std::vector<PriorSpec> priors {
    {},
    { PriorStrategy::kFixed, 1.3, { 0.7 } },
    { PriorStrategy::kAdaptive, 0.6, {} },
  };
  for (int trial = 0; trial < 60; ++trial) {
    const Eigen::Index n = 1 + trial % 10, d = 1 + trial % 3;
    const auto data = random_bkp(rng, n, d, 30);
    const auto family = static_cast<KernelFamily>(trial % 3);
    const auto &prior = priors[static_cast<std::size_t>(trial) % 3];
    std::vector<double> theta(static_cast<std::size_t>(d)), gamma(theta.size());
    for (std::size_t j = 0; j < theta.size(); ++j) {
      gamma[j] = -1.5 + 2 * rng.uniform();
      theta[j] = std::pow(10.0, gamma[j]);
    }
    FitOptions o;
    o.kernel = family;
    o.prior = prior;
    o.theta = Eigen::Map<const Vector>(theta.data(), d);
    const auto model = bkp::fit_bkp(data, o);
    Matrix counts(n, 2);
    counts << data.y, data.m - data.y;
    const Matrix unit = bkp::normalize_inputs(data.x, data.bounds);
    // Gamma goes through log10(10^g), so compare against the model's value.
    std::vector<double> model_gamma(model.gamma().data(),
                                    model.gamma().data() + d);
    for (int k = 0; k < 5; ++k) {
      Vector x(d), u(d);
      for (Eigen::Index j = 0; j < d; ++j) {
        u[j] = rng.uniform();
        x[j] = data.bounds.lower()[j]
               + (data.bounds.upper()[j] - data.bounds.lower()[j]) * u[j];
      }
      const auto s = bkp::posterior_at(model, x);
      const Matrix ux = bkp::normalize_inputs(x.transpose(), data.bounds);
      const auto alpha = bkp::oracle::posterior(unit, counts, family,
                                                model_gamma, prior, ux.data());
      CHECK(std::abs(s.alpha - alpha[0]) <= 1e-12 * std::max(1.0, alpha[0]));
      CHECK(std::abs(s.beta - alpha[1]) <= 1e-12 * std::max(1.0, alpha[1]));
    }
  }
}

TEST_CASE("posterior invariants") {
  bkp::RngStream rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    const auto data = random_bkp(rng, 12, 2, 20);
    const auto model = bkp::fit_bkp(data, fixed_theta(0.2));
    Matrix q(20, 2);
    for (Eigen::Index i = 0; i < 20; ++i) {
      q(i, 0) = -1 + 3 * rng.uniform();
      q(i, 1) = -2 + 5 * rng.uniform();
    }
    const auto preds = bkp::predict(model, q);
    const Matrix unit = bkp::normalize_inputs(data.x, data.bounds);
    const Matrix qu = bkp::normalize_inputs(q, data.bounds);
    for (Eigen::Index i = 0; i < 20; ++i) {
      const auto &p = preds[static_cast<std::size_t>(i)];
      const Vector k = bkp::kernel_vector(model.kernel(), unit, qu.row(i).transpose());
      CHECK(p.alpha_n >= 1);
      CHECK(p.beta_n >= 1);
      CHECK(p.alpha_n + p.beta_n
            == doctest::Approx(2 + k.dot(data.m)).epsilon(1e-14));
      CHECK((p.mean > 0 && p.mean < 1));
      CHECK(p.variance <= 0.25);
      CHECK(p.lower <= p.mean);
      CHECK(p.mean <= p.upper);
      CHECK_FALSE(p.label.has_value());
    }
  }
}

TEST_CASE("one-sided data pulls the mean to one side") {
  bkp::RngStream rng(33);
  auto data = random_bkp(rng, 10, 1, 5);
  data.y.setZero();
  const auto model = bkp::fit_bkp(data, fixed_theta(0.3));
  Matrix grid(50, 1);
  for (Eigen::Index i = 0; i < 50; ++i)
    grid(i, 0) = -1 + 3.0 * static_cast<double>(i) / 49;
  for (const auto &p: bkp::predict(model, grid))
    CHECK(p.mean < 0.5);
  data.y = data.m;
  const auto full = bkp::fit_bkp(data, fixed_theta(0.3));
  for (const auto &p: bkp::predict(full, grid))
    CHECK(p.mean > 0.5);
}

TEST_CASE("summaries of known Beta shapes") {
  const auto s = bkp::summarize_beta(4, 8, 0.95);
  CHECK(s.mean == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(std::abs(s.variance - 0.017094017094017094) <= 1e-15);
  const auto u = bkp::summarize_beta(1, 1, 0.95);
  CHECK(u.lower == doctest::Approx(0.025).epsilon(1e-13));
  CHECK(u.upper == doctest::Approx(0.975).epsilon(1e-13));
  CHECK_THROWS_AS(bkp::summarize_beta(1, 1, 1.0), bkp::DomainError);
}

TEST_CASE("labels only for single-trial data and strict threshold") {
  BkpDataset d;
  d.x.resize(2, 1);
  d.x << 0.25, 0.75;
  d.bounds = bkp::InputBounds::unit(1);
  d.y.resize(2);
  d.y << 1, 0;
  d.m = Vector::Ones(2);
  const auto model = bkp::fit_bkp(d, fixed_theta(0.3));
  // Exact midpoint: equal weights on one success and one failure.
  const auto mid = bkp::predict(model, point({ 0.5 }));
  REQUIRE(mid[0].label.has_value());
  CHECK(mid[0].mean == 0.5);
  CHECK(*mid[0].label == 0);
  CHECK(*bkp::predict(model, point({ 0.1 }))[0].label == 1);
  CHECK(*bkp::predict(model, point({ 0.1 }), 0.95, 0.99)[0].label == 0);

  d.m[1] = 2;
  const auto counts_model = bkp::fit_bkp(d, fixed_theta(0.3));
  CHECK_FALSE(bkp::predict(counts_model, point({ 0.5 }))[0].label.has_value());
}

TEST_CASE("predict argument checks") {
  const auto model = bkp::fit_bkp(single_point(1, 2), fixed_theta(0.3));
  CHECK_THROWS_AS(bkp::predict(model, point({ 0.5 }), 0.0), bkp::DomainError);
  CHECK_THROWS_AS(bkp::predict(model, point({ 0.5 }), 0.95, 1.0),
                  bkp::DomainError);
  CHECK_THROWS_AS(bkp::predict(model, point({ 1.5 })), bkp::DomainError);
  CHECK_THROWS_AS(bkp::predict(model, point({ 0.5, 0.5 })), bkp::DomainError);
}

TEST_CASE("simulate draws from the posterior") {
  FitOptions o;
  o.theta = Vector::Constant(1, 1e-10);
  const auto flat = bkp::fit_bkp(single_point(3, 10), o);
  const int n = 1000000;
  const auto sim = bkp::simulate(flat, point({ 0.95 }), n, std::nullopt, 5);
  REQUIRE(sim.draws.cols() == n);
  const double mean = sim.draws.mean();
  CHECK(std::abs(mean - 0.5) < 3 * std::sqrt(1.0 / 12 / n));
  CHECK(sim.draws.minCoeff() > 0);
  CHECK(sim.draws.maxCoeff() < 1);
  CHECK_FALSE(sim.labels.has_value());

  const auto again = bkp::simulate(flat, point({ 0.95 }), 1000, std::nullopt, 5);
  const auto same = bkp::simulate(flat, point({ 0.95 }), 1000, std::nullopt, 5);
  CHECK(again.draws == same.draws);
}

TEST_CASE("simulate uses one stream per query point") {
  const auto model = bkp::fit_bkp(single_point(1, 1), fixed_theta(0.3));
  Matrix q(3, 1);
  q << 0.1, 0.5, 0.9;
  const auto all = bkp::simulate(model, q, 4, 0.5, 8);
  const auto last = bkp::simulate(model, q.bottomRows(1), 4, 0.5, 8);
  // Point 2 alone is point 0 of its own call, so streams differ by index.
  const auto first = bkp::simulate(model, q.topRows(1), 4, 0.5, 8);
  CHECK(all.draws.row(0) == first.draws.row(0));
  CHECK(all.draws.row(2) != last.draws.row(0));
  REQUIRE(all.labels.has_value());
  for (Eigen::Index j = 0; j < 3; ++j)
    for (Eigen::Index r = 0; r < 4; ++r)
      CHECK((*all.labels)(j, r) == (all.draws(j, r) > 0.5 ? 1 : 0));
  CHECK_THROWS_AS(bkp::simulate(model, q, 0, std::nullopt, 1), bkp::DomainError);
}

TEST_CASE("fit with fixed theta skips the search") {
  const auto data = bkp::make_pi1_data(7, 1);
  FitOptions o;
  o.theta = Vector::Ones(1);
  const auto model = bkp::fit_bkp(data, o);
  CHECK(model.theta_user_fixed());
  CHECK(model.gamma()[0] == 0);
  CHECK(model.starts().empty());
  CHECK(model.loss_min()
        == bkp::brier_loss(Vector::Zero(1), data, {}, KernelFamily::kGaussian));
}

TEST_CASE("fit on the two-point toy with a huge length scale") {
  BkpDataset d;
  d.x.resize(2, 1);
  d.x << 0.2, 0.8;
  d.bounds = bkp::InputBounds::unit(1);
  d.y.resize(2);
  d.y << 1, 0;
  d.m = Vector::Ones(2);
  const auto model = bkp::fit_bkp(d, fixed_theta(1e10));
  CHECK(std::abs(model.loss_min() - 4.0 / 9) <= 1e-12);
}

TEST_CASE("optimized fit on regenerated one-dimensional data") {
  const auto data = bkp::make_pi1_data(7, 3);
  FitOptions o;
  o.seed = 3;
  const auto model = bkp::fit_bkp(data, o);
  CHECK_FALSE(model.theta_user_fixed());
  CHECK(model.starts().size() == 10);
  CHECK(model.loss_min() < 0.05);
  CHECK(model.loss_min()
        == bkp::brier_loss(model.gamma(), data, {}, KernelFamily::kGaussian));
  for (const auto &s: model.starts())
    CHECK(model.loss_min() <= s.start_loss);

  Matrix grid(100, 1);
  Vector truth(100), mean(100);
  for (Eigen::Index i = 0; i < 100; ++i) {
    grid(i, 0) = -2 + 4.0 * static_cast<double>(i) / 99;
    truth[i] = bkp::true_pi1(grid(i, 0));
  }
  const auto preds = bkp::predict(model, grid);
  for (Eigen::Index i = 0; i < 100; ++i)
    mean[i] = preds[static_cast<std::size_t>(i)].mean;
  CHECK(bkp::rmse(mean, truth) <= 0.15);

  const auto again = bkp::fit_bkp(data, o);
  CHECK(again.gamma() == model.gamma());

  const auto text = bkp::summary(model);
  CHECK(text.find("Number of observations (n):  7") != std::string::npos);
  CHECK(text.find("Input dimensionality (d):    1") != std::string::npos);
  CHECK(text.find("Kernel type:                 gaussian") != std::string::npos);
  CHECK(text.find("Loss function used:          brier") != std::string::npos);
  CHECK(text.find("obtained by optimization") != std::string::npos);
}

TEST_CASE("fit rejects invalid data and options") {
  auto bad = single_point(3, 2);
  CHECK_THROWS_AS(bkp::fit_bkp(bad, fixed_theta(1)), bkp::DataError);
  bad = single_point(0, 0);
  CHECK_THROWS_AS(bkp::fit_bkp(bad, fixed_theta(1)), bkp::DataError);
  BkpDataset empty;
  empty.bounds = bkp::InputBounds::unit(1);
  empty.x.resize(0, 1);
  CHECK_THROWS_AS(bkp::fit_bkp(empty, fixed_theta(1)), bkp::DataError);
  CHECK_THROWS_AS(bkp::fit_bkp(single_point(1, 2), fixed_theta(-1)),
                  bkp::DomainError);
  FitOptions wrong = fixed_theta(1);
  wrong.theta = Vector::Ones(3);
  CHECK_THROWS_AS(bkp::fit_bkp(single_point(1, 2), wrong), bkp::DomainError);
}

TEST_CASE("fixed prior at r0 = 2, p0 = 0.5 equals the noninformative prior") {
  const auto data = bkp::make_pi2_data(20, 4);
  FitOptions a;
  a.theta = Vector::Constant(1, 0.2);
  FitOptions b = a;
  b.prior = { PriorStrategy::kFixed, 2, { 0.5 } };
  const auto ma = bkp::fit_bkp(data, a), mb = bkp::fit_bkp(data, b);
  Matrix grid(30, 1);
  for (Eigen::Index i = 0; i < 30; ++i)
    grid(i, 0) = -2 + 4.0 * static_cast<double>(i) / 29;
  const auto pa = bkp::predict(ma, grid), pb = bkp::predict(mb, grid);
  for (std::size_t i = 0; i < pa.size(); ++i) {
    CHECK(pa[i].mean == pb[i].mean);
    CHECK(pa[i].upper == pb[i].upper);
  }
  CHECK(ma.loss_min() == mb.loss_min());
}

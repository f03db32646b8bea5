//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <vector>

#include <doctest.h>

#include "bkp/errors.hpp"
#include "bkp/kernels.hpp"
#include "bkp/numerics.hpp"

using bkp::KernelFamily;
using bkp::KernelSpec;
using bkp::Matrix;
using bkp::Vector;

namespace {
const std::vector<KernelFamily> kFamilies { KernelFamily::kGaussian,
                                            KernelFamily::kMatern32,
                                            KernelFamily::kMatern52 };

Matrix random_unit(Eigen::Index n, Eigen::Index d, bkp::RngStream &rng) {
  Matrix x(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      x(i, j) = rng.uniform();
  return x;
}

// Scalar reimplementation of the kernel table.
double kernel_oracle(KernelFamily family, double h) {
  switch (family) {
  case KernelFamily::kGaussian:
    return std::exp(-h * h);
  case KernelFamily::kMatern32:
    return (1 + std::sqrt(3.0) * h) * std::exp(-std::sqrt(3.0) * h);
  case KernelFamily::kMatern52:
    return (1 + std::sqrt(5.0) * h + 5.0 / 3.0 * h * h)
           * std::exp(-std::sqrt(5.0) * h);
  }
  return NAN;
}
} // namespace

TEST_CASE("scaled_distance") {
  Vector a(2), b(2), t(2);
  a << 0, 0;
  b << 1, 1;
  t << 1, 1;
  CHECK(bkp::scaled_distance(a, a, t) == 0);
  CHECK(bkp::scaled_distance(a, b, t) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  Vector x(1), y(1), th(1);
  x << 0;
  y << 1;
  th << 2;
  CHECK(bkp::scaled_distance(x, y, th) == 0.5);
  CHECK_THROWS_AS(bkp::scaled_distance(a, x, t), bkp::DomainError);
}

TEST_CASE("kernel_eval table values") {
  for (const auto f: kFamilies)
    CHECK(bkp::kernel_eval(f, 0) == 1);
  CHECK(std::abs(bkp::kernel_eval(KernelFamily::kGaussian, 1)
                 - 0.36787944117144233)
        <= 1e-15);
  CHECK(std::abs(bkp::kernel_eval(KernelFamily::kMatern32, 1)
                 - 0.4833577245965077)
        <= 1e-15);
  CHECK(std::abs(bkp::kernel_eval(KernelFamily::kMatern52, 1)
                 - 0.5239941088318203)
        <= 1e-15);
  CHECK_THROWS_AS(bkp::kernel_eval(KernelFamily::kGaussian, -0.1),
                  bkp::DomainError);
}

TEST_CASE("kernel_eval is bounded and nonincreasing") {
  for (const auto f: kFamilies) {
    double prev = 1;
    for (int i = 0; i <= 20000; ++i) {
      const double h = i * 1e-3;
      const double k = bkp::kernel_eval(f, h);
      CHECK(k >= 0);
      CHECK(k <= prev);
      CHECK(std::abs(k - kernel_oracle(f, h)) <= 1e-15);
      CHECK(bkp::kernel_from_sq(f, h * h)
            == doctest::Approx(k).epsilon(1e-14).scale(1e-300));
      prev = k;
    }
  }
}

TEST_CASE("kernel_vector limits") {
  bkp::RngStream rng(4);
  const Matrix train = random_unit(12, 3, rng);
  for (const auto f: kFamilies) {
    KernelSpec wide { f, Vector::Constant(3, 10.0) };
    const Vector all = bkp::kernel_vector(wide, train, train.row(0).transpose());
    CHECK((1 - all.array()).abs().maxCoeff() <= 1e-6);

    KernelSpec narrow { f, Vector::Constant(3, -10.0) };
    const Vector local =
        bkp::kernel_vector(narrow, train, train.row(5).transpose());
    CHECK(local[5] == 1);
    for (Eigen::Index i = 0; i < local.size(); ++i) {
      if (i != 5)
        CHECK(local[i] < 1e-300);
    }
  }
}

TEST_CASE("kernel_matrix matches pairwise recomputation") {
  bkp::RngStream rng(5);
  const Matrix a = random_unit(5, 2, rng);
  const Matrix b = random_unit(4, 2, rng);
  for (const auto f: kFamilies) {
    Vector gamma(2);
    gamma << -0.4, 0.2;
    const KernelSpec spec { f, gamma };
    const Vector theta = spec.theta();
    const Matrix k = bkp::kernel_matrix(spec, a, b);
    for (Eigen::Index i = 0; i < 5; ++i) {
      for (Eigen::Index j = 0; j < 4; ++j) {
        double h2 = 0;
        for (Eigen::Index c = 0; c < 2; ++c) {
          const double t = (a(i, c) - b(j, c)) / theta[c];
          h2 += t * t;
        }
        CHECK(std::abs(k(i, j) - kernel_oracle(f, std::sqrt(h2))) <= 1e-15);
      }
    }
    const Matrix self = bkp::kernel_matrix(spec, a, a);
    CHECK((self - self.transpose()).cwiseAbs().maxCoeff() == 0);
    CHECK((self.diagonal().array() == 1).all());

    const Vector kv = bkp::kernel_vector(spec, a, b.row(2).transpose());
    CHECK((kv - k.col(2)).cwiseAbs().maxCoeff() == 0);
  }
}

TEST_CASE("permuting dimensions with gamma leaves weights unchanged") {
  bkp::RngStream rng(6);
  const Matrix x = random_unit(8, 3, rng);
  Vector gamma(3);
  gamma << -1, 0.3, -0.2;
  Eigen::PermutationMatrix<Eigen::Dynamic> perm(3);
  perm.indices() << 2, 0, 1;
  const Matrix xp = x * perm;
  const Vector gp = perm.transpose() * gamma;
  for (const auto f: kFamilies) {
    const Matrix k1 = bkp::kernel_matrix({ f, gamma }, x, x);
    const Matrix k2 = bkp::kernel_matrix({ f, gp }, xp, xp);
    CHECK((k1 - k2).cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("KernelSpec validation and names") {
  KernelSpec bad { KernelFamily::kGaussian, Vector::Constant(1, NAN) };
  CHECK_THROWS_AS(bad.validate(), bkp::DomainError);
  for (const auto f: kFamilies)
    CHECK(bkp::parse_kernel_family(bkp::to_string(f)) == f);
  CHECK_FALSE(bkp::parse_kernel_family("rbf").has_value());
}

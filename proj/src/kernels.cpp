//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "bkp/kernels.hpp"

#include <cmath>

#include <fmt/format.h>

#include "bkp/errors.hpp"

namespace bkp {
namespace {
  const double kSqrt3 = std::sqrt(3.0);
  const double kSqrt5 = std::sqrt(5.0);

  void check_theta(const VectorRef &theta) {
    for (Eigen::Index j = 0; j < theta.size(); ++j) {
      if (!(theta[j] > 0) || !std::isfinite(theta[j]))
        throw DomainError(fmt::format(
            "length scale {} must be positive and finite (got {})", j + 1,
            theta[j]));
    }
  }
} // namespace

std::string_view to_string(KernelFamily family) {
  switch (family) {
  case KernelFamily::kGaussian:
    return "gaussian";
  case KernelFamily::kMatern32:
    return "matern32";
  case KernelFamily::kMatern52:
    return "matern52";
  }
  return "unknown";
}

std::optional<KernelFamily> parse_kernel_family(std::string_view name) {
  if (name == "gaussian")
    return KernelFamily::kGaussian;
  if (name == "matern32")
    return KernelFamily::kMatern32;
  if (name == "matern52")
    return KernelFamily::kMatern52;
  return std::nullopt;
}

Vector KernelSpec::theta() const {
  Vector t(gamma.size());
  for (Eigen::Index j = 0; j < gamma.size(); ++j)
    t[j] = std::pow(10.0, gamma[j]);
  return t;
}

void KernelSpec::validate() const {
  if (gamma.size() < 1)
    throw DomainError("kernel spec has no length scales");
  for (Eigen::Index j = 0; j < gamma.size(); ++j) {
    if (!std::isfinite(gamma[j]))
      throw DomainError(
          fmt::format("log length scale {} is not finite", j + 1));
  }
}

double scaled_sq_distance(const VectorRef &x, const VectorRef &x2,
                          const VectorRef &theta) {
  if (x.size() != x2.size() || x.size() != theta.size()) {
    throw DomainError(fmt::format(
        "scaled_distance: dimension mismatch ({}, {}, {})", x.size(),
        x2.size(), theta.size()));
  }
  double h2 = 0;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double r = (x[j] - x2[j]) / theta[j];
    h2 += r * r;
  }
  return h2;
}

double scaled_distance(const VectorRef &x, const VectorRef &x2,
                       const VectorRef &theta) {
  check_theta(theta);
  return std::sqrt(scaled_sq_distance(x, x2, theta));
}

double kernel_from_sq(KernelFamily family, double h2) {
  switch (family) {
  case KernelFamily::kGaussian:
    return std::exp(-h2);
  case KernelFamily::kMatern32: {
    const double r = kSqrt3 * std::sqrt(h2);
    return (1 + r) * std::exp(-r);
  }
  case KernelFamily::kMatern52: {
    const double r = kSqrt5 * std::sqrt(h2);
    return (1 + r + 5.0 / 3.0 * h2) * std::exp(-r);
  }
  }
  return 0;
}

double kernel_eval(KernelFamily family, double h) {
  if (!(h >= 0))
    throw DomainError(
        fmt::format("kernel_eval: distance must be nonnegative (h={})", h));
  if (std::isinf(h))
    return 0;
  if (family == KernelFamily::kGaussian)
    return std::exp(-h * h);
  return kernel_from_sq(family, h * h);
}

Vector kernel_vector(const KernelSpec &spec, const MatrixRef &train,
                     const VectorRef &x) {
  if (train.cols() != x.size() || spec.dim() != x.size()) {
    throw DomainError(fmt::format(
        "kernel_vector: dimension mismatch (train {}, query {}, kernel {})",
        train.cols(), x.size(), spec.dim()));
  }
  const Vector theta = spec.theta();
  Vector k(train.rows());
  for (Eigen::Index i = 0; i < train.rows(); ++i) {
    const double h2 =
        scaled_sq_distance(train.row(i).transpose(), x, theta);
    k[i] = kernel_from_sq(spec.family, h2);
  }
  return k;
}

Matrix kernel_matrix(const KernelSpec &spec, const MatrixRef &a,
                     const MatrixRef &b) {
  if (a.cols() != b.cols() || spec.dim() != a.cols()) {
    throw DomainError(fmt::format(
        "kernel_matrix: dimension mismatch ({} vs {}, kernel {})", a.cols(),
        b.cols(), spec.dim()));
  }
  const Vector theta = spec.theta();
  Matrix k(a.rows(), b.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.rows(); ++j) {
      const double h2 = scaled_sq_distance(a.row(i).transpose(),
                                           b.row(j).transpose(), theta);
      k(i, j) = kernel_from_sq(spec.family, h2);
    }
  }
  return k;
}

} // namespace bkp

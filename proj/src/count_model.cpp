//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "bkp/detail/count_model.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include <fmt/format.h>

#include "bkp/errors.hpp"

namespace bkp::detail {
namespace {
  std::span<double> row_span(Matrix &m, Eigen::Index i) {
    return { m.row(i).data(), static_cast<std::size_t>(m.cols()) };
  }

  double sq_dist(const double *a, const double *b, const double *theta,
                 Eigen::Index d) {
    double h2 = 0;
    for (Eigen::Index j = 0; j < d; ++j) {
      const double r = (a[j] - b[j]) / theta[j];
      h2 += r * r;
    }
    return h2;
  }
} // namespace

CountTable make_count_table(Matrix x_unit, Matrix counts) {
  if (x_unit.rows() != counts.rows())
    throw DataError("count table: input and count rows differ");
  CountTable t;
  t.x = std::move(x_unit);
  t.counts = std::move(counts);
  t.trials = t.counts.rowwise().sum();
  t.props.resize(t.counts.rows(), t.counts.cols());
  for (Eigen::Index i = 0; i < t.counts.rows(); ++i) {
    if (!(t.trials[i] >= 1))
      throw DataError(fmt::format("row {}: no observations", i + 1));
    for (Eigen::Index s = 0; s < t.counts.cols(); ++s)
      t.props(i, s) = t.counts(i, s) / t.trials[i];
  }
  return t;
}

Matrix posterior_alphas(const CountTable &table, const KernelSpec &kernel,
                        const PriorSpec &prior, const MatrixRef &query) {
  const Eigen::Index n = table.size(), d = table.dim(),
                     q = table.classes();
  if (query.cols() != d || kernel.dim() != d) {
    throw DomainError(fmt::format(
        "posterior: dimension mismatch (model {}, query {}, kernel {})", d,
        query.cols(), kernel.dim()));
  }
  const Vector theta = kernel.theta();
  const auto means = prior.class_means(q);
  const bool adaptive = prior.strategy == PriorStrategy::kAdaptive;

  Matrix alphas(query.rows(), q);
  Matrix sums(1, q), props(1, q);
  for (Eigen::Index p = 0; p < query.rows(); ++p) {
    sums.setZero();
    props.setZero();
    double mass = 0;
    const double *xq = query.row(p).data();
    for (Eigen::Index i = 0; i < n; ++i) {
      const double k = kernel_from_sq(
          kernel.family, sq_dist(xq, table.x.row(i).data(), theta.data(), d));
      for (Eigen::Index s = 0; s < q; ++s)
        sums(0, s) += k * table.counts(i, s);
      if (adaptive) {
        mass += k;
        for (Eigen::Index s = 0; s < q; ++s)
          props(0, s) += k * table.props(i, s);
      }
    }
    prior_from_sums(prior, means, mass, row_span(props, 0),
                    row_span(alphas, p));
    for (Eigen::Index s = 0; s < q; ++s)
      alphas(p, s) += sums(0, s);
  }
  return alphas;
}

Matrix loo_alphas(const CountTable &table, const KernelSpec &kernel,
                  const PriorSpec &prior) {
  const Eigen::Index n = table.size(), d = table.dim(),
                     q = table.classes();
  if (kernel.dim() != d)
    throw DomainError("loo: kernel and data dimensions differ");
  const Vector theta = kernel.theta();
  const auto means = prior.class_means(q);
  const bool adaptive = prior.strategy == PriorStrategy::kAdaptive;

  Matrix sums = Matrix::Zero(n, q);
  Matrix props;
  Vector mass;
  if (adaptive) {
    props = Matrix::Zero(n, q);
    mass = Vector::Zero(n);
  }

  // k(x_i, x_j) is symmetric: each pair is evaluated once and credited to
  // both rows, which skips the self term by construction.
  for (Eigen::Index i = 0; i < n; ++i) {
    const double *xi = table.x.row(i).data();
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double k = kernel_from_sq(
          kernel.family, sq_dist(xi, table.x.row(j).data(), theta.data(), d));
      for (Eigen::Index s = 0; s < q; ++s) {
        sums(i, s) += k * table.counts(j, s);
        sums(j, s) += k * table.counts(i, s);
      }
      if (adaptive) {
        mass[i] += k;
        mass[j] += k;
        for (Eigen::Index s = 0; s < q; ++s) {
          props(i, s) += k * table.props(j, s);
          props(j, s) += k * table.props(i, s);
        }
      }
    }
  }

  Matrix alphas(n, q);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (adaptive)
      prior_from_sums(prior, means, mass[i], row_span(props, i),
                      row_span(alphas, i));
    else
      prior_from_sums(prior, means, 0.0, {}, row_span(alphas, i));
    for (Eigen::Index s = 0; s < q; ++s)
      alphas(i, s) += sums(i, s);
  }
  return alphas;
}

double loss_from_alphas(const CountTable &table, const MatrixRef &alphas,
                        LossKind kind, bool binary) {
  const Eigen::Index n = table.size(), q = table.classes();
  double total = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double norm = 0;
    for (Eigen::Index s = 0; s < q; ++s)
      norm += alphas(i, s);

    if (kind == LossKind::kBrier) {
      if (binary) {
        const double e = alphas(i, 0) / norm - table.props(i, 0);
        total += e * e;
      } else if (q == 2) {
        // Both deviations have equal magnitude; one exact doubling keeps
        // the objective a bit-exact multiple of the binary one.
        const double e = alphas(i, 0) / norm - table.props(i, 0);
        total += 2 * (e * e);
      } else {
        double row = 0;
        for (Eigen::Index s = 0; s < q; ++s) {
          const double e = alphas(i, s) / norm - table.props(i, s);
          row += e * e;
        }
        total += row;
      }
    } else {
      double row = 0;
      for (Eigen::Index s = 0; s < q; ++s) {
        const double p =
            std::clamp(alphas(i, s) / norm, kProbClamp, 1 - kProbClamp);
        row += table.counts(i, s) * std::log(p);
      }
      total += row;
    }
  }
  const double mean = total / static_cast<double>(n);
  return kind == LossKind::kBrier ? mean : -mean;
}

} // namespace bkp::detail

//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "bkp/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include <fmt/format.h>

#include "bkp/errors.hpp"

namespace bkp {
namespace {
  detail::CountTable prepare(const BkpDataset &data) {
    data.validate();
    auto two = to_two_class(data);
    return detail::make_count_table(normalize_inputs(two.x, two.bounds),
                                    std::move(two.counts));
  }

  detail::CountTable prepare(const DkpDataset &data) {
    data.validate();
    return detail::make_count_table(normalize_inputs(data.x, data.bounds),
                                    data.counts);
  }

  KernelSpec spec_for(const VectorRef &gamma, KernelFamily family,
                      Eigen::Index d) {
    KernelSpec spec { family, gamma };
    spec.validate();
    if (spec.dim() != d)
      throw DomainError(fmt::format(
          "gamma has {} entries but the data has {} input dimensions",
          spec.dim(), d));
    return spec;
  }

  Matrix means_from_alphas(const Matrix &alphas) {
    Matrix means(alphas.rows(), alphas.cols());
    for (Eigen::Index i = 0; i < alphas.rows(); ++i) {
      double norm = 0;
      for (Eigen::Index s = 0; s < alphas.cols(); ++s)
        norm += alphas(i, s);
      for (Eigen::Index s = 0; s < alphas.cols(); ++s)
        means(i, s) = alphas(i, s) / norm;
    }
    return means;
  }

  double loss_for(const VectorRef &gamma, detail::CountTable table,
                  const PriorSpec &prior, KernelFamily family, LossKind kind,
                  bool binary) {
    prior.validate(table.classes());
    const auto spec = spec_for(gamma, family, table.dim());
    const Matrix alphas = detail::loo_alphas(table, spec, prior);
    return detail::loss_from_alphas(table, alphas, kind, binary);
  }
} // namespace

std::string_view to_string(LossKind kind) {
  return kind == LossKind::kBrier ? "brier" : "log_loss";
}

std::optional<LossKind> parse_loss_kind(std::string_view name) {
  if (name == "brier")
    return LossKind::kBrier;
  if (name == "log_loss")
    return LossKind::kLogLoss;
  return std::nullopt;
}

unsigned default_thread_count() {
  if (const char *env = std::getenv("BKP_NUM_THREADS")) {
    char *end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0)
      return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

Vector loo_posterior_means(const VectorRef &gamma, const BkpDataset &data,
                           const PriorSpec &prior, KernelFamily family) {
  const auto table = prepare(data);
  prior.validate(2);
  const Matrix alphas =
      detail::loo_alphas(table, spec_for(gamma, family, table.dim()), prior);
  return means_from_alphas(alphas).col(0);
}

Matrix loo_posterior_means(const VectorRef &gamma, const DkpDataset &data,
                           const PriorSpec &prior, KernelFamily family) {
  const auto table = prepare(data);
  prior.validate(table.classes());
  const Matrix alphas =
      detail::loo_alphas(table, spec_for(gamma, family, table.dim()), prior);
  return means_from_alphas(alphas);
}

double brier_loss(const VectorRef &gamma, const BkpDataset &data,
                  const PriorSpec &prior, KernelFamily family) {
  return loss_for(gamma, prepare(data), prior, family, LossKind::kBrier, true);
}

double log_loss(const VectorRef &gamma, const BkpDataset &data,
                const PriorSpec &prior, KernelFamily family) {
  return loss_for(gamma, prepare(data), prior, family, LossKind::kLogLoss,
                  true);
}

double brier_loss(const VectorRef &gamma, const DkpDataset &data,
                  const PriorSpec &prior, KernelFamily family) {
  return loss_for(gamma, prepare(data), prior, family, LossKind::kBrier,
                  false);
}

double log_loss(const VectorRef &gamma, const DkpDataset &data,
                const PriorSpec &prior, KernelFamily family) {
  return loss_for(gamma, prepare(data), prior, family, LossKind::kLogLoss,
                  false);
}

double brier_from_means(const VectorRef &means, const VectorRef &y,
                        const VectorRef &m) {
  if (means.size() != y.size() || y.size() != m.size() || y.size() == 0)
    throw DomainError("brier_from_means: length mismatch");
  double total = 0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double e = means[i] - y[i] / m[i];
    total += e * e;
  }
  return total / static_cast<double>(y.size());
}

double log_loss_from_means(const VectorRef &means, const VectorRef &y,
                           const VectorRef &m) {
  if (means.size() != y.size() || y.size() != m.size() || y.size() == 0)
    throw DomainError("log_loss_from_means: length mismatch");
  double total = 0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double p = std::clamp(means[i], detail::kProbClamp,
                                1 - detail::kProbClamp);
    total += y[i] * std::log(p) + (m[i] - y[i]) * std::log(1 - p);
  }
  return -total / static_cast<double>(y.size());
}

LooObjective::LooObjective(detail::CountTable table, KernelFamily family,
                           PriorSpec prior, LossKind kind, bool binary)
    : table_(std::move(table)), family_(family), prior_(std::move(prior)),
      kind_(kind), binary_(binary) {
  prior_.validate(table_.classes());
}

Matrix LooObjective::loo_alphas(const VectorRef &gamma) const {
  return detail::loo_alphas(table_, KernelSpec { family_, gamma }, prior_);
}

double LooObjective::operator()(const VectorRef &gamma) const {
  const Matrix alphas = loo_alphas(gamma);
  return detail::loss_from_alphas(table_, alphas, kind_, binary_);
}

std::vector<Interval> search_region_omega0(Eigen::Index d) {
  if (d < 1)
    throw DomainError("search_region_omega0: d must be >= 1");
  const double ld = std::log10(static_cast<double>(d));
  const Interval box { (ld - std::log10(500.0)) / 2, (ld + 2) / 2 };
  return std::vector<Interval>(static_cast<std::size_t>(d), box);
}

} // namespace bkp

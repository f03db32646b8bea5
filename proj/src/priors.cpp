//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "bkp/priors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "bkp/errors.hpp"

namespace bkp {

std::string_view to_string(PriorStrategy strategy) {
  switch (strategy) {
  case PriorStrategy::kNoninformative:
    return "noninformative";
  case PriorStrategy::kFixed:
    return "fixed";
  case PriorStrategy::kAdaptive:
    return "adaptive";
  }
  return "unknown";
}

std::optional<PriorStrategy> parse_prior_strategy(std::string_view name) {
  if (name == "noninformative")
    return PriorStrategy::kNoninformative;
  if (name == "fixed")
    return PriorStrategy::kFixed;
  if (name == "adaptive")
    return PriorStrategy::kAdaptive;
  return std::nullopt;
}

std::vector<double> PriorSpec::class_means(Eigen::Index q) const {
  if (q < 2)
    throw DomainError("prior: at least two classes required");
  const auto nq = static_cast<std::size_t>(q);
  if (p0.empty())
    return std::vector<double>(nq, 1.0 / static_cast<double>(q));
  if (q == 2 && p0.size() == 1)
    return { p0[0], 1 - p0[0] };
  if (p0.size() != nq) {
    throw DomainError(fmt::format(
        "prior: p0 has {} entries but the data has {} classes", p0.size(), q));
  }
  return p0;
}

void PriorSpec::validate(Eigen::Index q) const {
  if (!(r0 > 0) || !std::isfinite(r0))
    throw DomainError(fmt::format("prior: r0 must be positive (got {})", r0));
  const auto means = class_means(q);
  for (double p: means) {
    if (!(p > 0 && p < 1))
      throw DomainError(fmt::format(
          "prior: p0 entries must lie strictly between 0 and 1 (got {})", p));
  }
  const double total = std::accumulate(means.begin(), means.end(), 0.0);
  if (std::abs(total - 1) > 1e-12)
    throw DomainError(
        fmt::format("prior: p0 entries must sum to 1 (sum is {})", total));
}

std::string PriorSpec::describe(Eigen::Index q) const {
  const bool binary = q == 2;
  switch (strategy) {
  case PriorStrategy::kNoninformative:
    if (binary)
      return "Noninformative prior: Beta(1,1).";
    return fmt::format("Noninformative prior: Dirichlet(1 x {}).", q);
  case PriorStrategy::kFixed: {
    const auto means = class_means(q);
    if (binary) {
      return fmt::format("Fixed prior: Beta({:.4g}, {:.4g}) with r0 = {:.4g}, "
                         "p0 = {:.4g}.",
                         r0 * means[0], r0 * means[1], r0, means[0]);
    }
    std::vector<double> alpha(means.size());
    std::transform(means.begin(), means.end(), alpha.begin(),
                   [this](double p) { return r0 * p; });
    return fmt::format("Fixed prior: Dirichlet({:.4g}) with r0 = {:.4g}.",
                       fmt::join(alpha, ", "), r0);
  }
  case PriorStrategy::kAdaptive:
    return fmt::format(
        "Adaptive prior: kernel-weighted local mean, precision r0 = {:.4g} "
        "times local kernel mass.",
        r0);
  }
  return "Unknown prior.";
}

void prior_from_sums(const PriorSpec &spec,
                     std::span<const double> class_means, double kernel_mass,
                     std::span<const double> weighted_props,
                     std::span<double> out) {
  switch (spec.strategy) {
  case PriorStrategy::kNoninformative:
    std::fill(out.begin(), out.end(), 1.0);
    return;
  case PriorStrategy::kFixed:
    for (std::size_t s = 0; s < out.size(); ++s)
      out[s] = spec.r0 * class_means[s];
    return;
  case PriorStrategy::kAdaptive:
    if (!(kernel_mass >= kMinKernelMass)) {
      std::fill(out.begin(), out.end(), 1.0);
      return;
    }
    {
      const double r = spec.r0 * kernel_mass;
      for (std::size_t s = 0; s < out.size(); ++s) {
        const double p = weighted_props[s] / kernel_mass;
        out[s] = std::max(r * p, kMinPriorShape);
      }
    }
    return;
  }
}

BetaShapes prior_bkp(const PriorSpec &spec, const VectorRef &kvec,
                     const VectorRef &y, const VectorRef &m) {
  if (kvec.size() != y.size() || y.size() != m.size())
    throw DomainError(fmt::format(
        "prior_bkp: length mismatch (k {}, y {}, m {})", kvec.size(), y.size(),
        m.size()));
  double mass = 0;
  std::array<double, 2> props { 0, 0 };
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (!(m[i] >= 1) || !(y[i] >= 0) || y[i] > m[i])
      throw DomainError(fmt::format(
          "prior_bkp: invalid counts at row {} (y={}, m={})", i + 1, y[i],
          m[i]));
    mass += kvec[i];
    props[0] += kvec[i] * (y[i] / m[i]);
    props[1] += kvec[i] * ((m[i] - y[i]) / m[i]);
  }
  const auto means = spec.class_means(2);
  std::array<double, 2> out {};
  prior_from_sums(spec, means, mass, props, out);
  return { out[0], out[1] };
}

Vector prior_dkp(const PriorSpec &spec, const VectorRef &kvec,
                 const MatrixRef &counts) {
  if (kvec.size() != counts.rows())
    throw DomainError(fmt::format("prior_dkp: length mismatch (k {}, Y {})",
                                  kvec.size(), counts.rows()));
  const Eigen::Index q = counts.cols();
  double mass = 0;
  std::vector<double> props(static_cast<std::size_t>(q), 0.0);
  for (Eigen::Index i = 0; i < counts.rows(); ++i) {
    const double m = counts.row(i).sum();
    if (!(m >= 1))
      throw DomainError(
          fmt::format("prior_dkp: row {} has no observations", i + 1));
    mass += kvec[i];
    for (Eigen::Index s = 0; s < q; ++s)
      props[static_cast<std::size_t>(s)] += kvec[i] * (counts(i, s) / m);
  }
  const auto means = spec.class_means(q);
  Vector out(q);
  prior_from_sums(spec, means, mass, props,
                  std::span<double>(out.data(), static_cast<std::size_t>(q)));
  return out;
}

} // namespace bkp

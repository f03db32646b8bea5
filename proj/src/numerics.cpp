//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "bkp/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "bkp/errors.hpp"

namespace bkp {
namespace {
  constexpr double kEps = std::numeric_limits<double>::epsilon();

  std::uint64_t splitmix64(std::uint64_t &s) noexcept {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  bool is_positive_finite(double v) {
    return std::isfinite(v) && v > 0;
  }

  void check_shapes(double a, double b, const char *fn) {
    if (!is_positive_finite(a) || !is_positive_finite(b)) {
      throw DomainError(fmt::format(
          "{}: shape parameters must be positive and finite (a={}, b={})", fn,
          a, b));
    }
  }

  // Modified Lentz evaluation of the continued fraction for I_x(a, b).
  double beta_continued_fraction(double x, double a, double b) {
    constexpr double tiny = 1e-300;
    constexpr int max_iter = 20000;

    const double qab = a + b, qap = a + 1, qam = a - 1;
    double c = 1;
    double d = 1 - qab * x / qap;
    if (std::abs(d) < tiny)
      d = tiny;
    d = 1 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
      const int m2 = 2 * m;
      double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
      d = 1 + aa * d;
      if (std::abs(d) < tiny)
        d = tiny;
      c = 1 + aa / c;
      if (std::abs(c) < tiny)
        c = tiny;
      d = 1 / d;
      h *= d * c;

      aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
      d = 1 + aa * d;
      if (std::abs(d) < tiny)
        d = tiny;
      c = 1 + aa / c;
      if (std::abs(c) < tiny)
        c = tiny;
      d = 1 / d;
      const double del = d * c;
      h *= del;
      if (std::abs(del - 1) <= kEps)
        return h;
    }
    throw NumericError(fmt::format(
        "reg_inc_beta: continued fraction did not converge (x={}, a={}, b={})",
        x, a, b));
  }

  // Marsaglia-Tsang squeeze method, valid for shape >= 1.
  double gamma_squeeze(double shape, RngStream &rng) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1 / std::sqrt(9 * d);
    for (;;) {
      double z, v;
      do {
        z = rng.normal();
        v = 1 + c * z;
      } while (v <= 0);
      v = v * v * v;
      const double u = rng.uniform();
      const double z2 = z * z;
      if (u < 1 - 0.0331 * z2 * z2)
        return d * v;
      if (std::log(u) < 0.5 * z2 + d * (1 - v + std::log(v)))
        return d * v;
    }
  }

  double clamp_open_unit(double x) {
    constexpr double lo = std::numeric_limits<double>::denorm_min();
    const double hi = std::nextafter(1.0, 0.0);
    return std::clamp(x, lo, hi);
  }

  // Sequential search from zero; p <= 0.5 and m * p small.
  long binomial_inversion(long m, double p, RngStream &rng) {
    const double q = 1 - p;
    const double s = p / q;
    const double a = (m + 1) * s;
    for (;;) {
      double r = std::pow(q, static_cast<double>(m));
      double u = rng.uniform();
      long x = 0;
      while (u > r) {
        u -= r;
        ++x;
        if (x > m)
          break;
        r *= a / static_cast<double>(x) - s;
      }
      // Rounding can exhaust the pmf mass; redraw in that case.
      if (x <= m)
        return x;
    }
  }
} // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_index)
    : seed_(seed), stream_index_(stream_index) {
  std::uint64_t s = seed;
  std::uint64_t t = stream_index ^ 0x6a09e667f3bcc909ULL;
  std::uint64_t mix = splitmix64(s) ^ rotl(splitmix64(t), 23);
  for (auto &w: state_)
    w = splitmix64(mix);
}

std::uint64_t RngStream::next_u64() noexcept {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RngStream::uniform() noexcept {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t RngStream::uniform_index(std::uint64_t n) noexcept {
  // Lemire's nearly-divisionless rejection.
  std::uint64_t x = next_u64();
  unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      x = next_u64();
      m = static_cast<unsigned __int128>(x) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

long RngStream::uniform_int(long lo, long hi) noexcept {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(uniform_index(span));
}

double RngStream::normal() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  double u, v, s;
  do {
    u = 2 * uniform() - 1;
    v = 2 * uniform() - 1;
    s = u * u + v * v;
  } while (s >= 1 || s == 0);
  const double f = std::sqrt(-2 * std::log(s) / s);
  spare_normal_ = v * f;
  has_spare_ = true;
  return u * f;
}

double log_gamma(double x) {
  if (!is_positive_finite(x))
    throw DomainError(fmt::format("log_gamma: argument must be positive and "
                                  "finite (x={})",
                                  x));

  // Lanczos approximation, g = 7, n = 9.
  static constexpr std::array<double, 9> coef {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
  };
  if (x < 0.5)
    return log_gamma(x + 1) - std::log(x);

  const double z = x - 1;
  double series = coef[0];
  for (int i = 1; i < 9; ++i)
    series += coef[i] / (z + i);
  const double t = z + 7.5;
  return 0.5 * std::log(2 * std::numbers::pi) + (z + 0.5) * std::log(t) - t
         + std::log(series);
}

double log_beta(double a, double b) {
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double std_normal_cdf(double z) {
  if (!std::isfinite(z))
    throw DomainError(fmt::format("std_normal_cdf: non-finite argument {}", z));
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double reg_inc_beta(double x, double a, double b) {
  check_shapes(a, b, "reg_inc_beta");
  if (!(x >= 0 && x <= 1))
    throw DomainError(
        fmt::format("reg_inc_beta: x must lie in [0, 1] (x={})", x));
  if (x == 0)
    return 0;
  if (x == 1)
    return 1;

  const double log_front =
      a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
  if (x < (a + 1) / (a + b + 2))
    return std::exp(log_front) * beta_continued_fraction(x, a, b) / a;
  return 1 - std::exp(log_front) * beta_continued_fraction(1 - x, b, a) / b;
}

double beta_pdf(double x, double a, double b) {
  check_shapes(a, b, "beta_pdf");
  if (!(x >= 0 && x <= 1))
    throw DomainError(fmt::format("beta_pdf: x must lie in [0, 1] (x={})", x));
  if (x == 0 || x == 1) {
    const double e = x == 0 ? a : b;
    if (e < 1)
      return std::numeric_limits<double>::infinity();
    if (e > 1)
      return 0;
    return std::exp(-log_beta(a, b));
  }
  return std::exp((a - 1) * std::log(x) + (b - 1) * std::log1p(-x)
                  - log_beta(a, b));
}

double beta_quantile(double p, double a, double b) {
  check_shapes(a, b, "beta_quantile");
  if (!(p > 0 && p < 1))
    throw DomainError(
        fmt::format("beta_quantile: p must lie in (0, 1) (p={})", p));

  constexpr int max_iter = 200;
  constexpr double target = 1e-10;

  // Starting point after Abramowitz & Stegun 26.5.22 / the power-law tails.
  double x;
  if (a >= 1 && b >= 1) {
    const double pp = p < 0.5 ? p : 1 - p;
    const double t = std::sqrt(-2 * std::log(pp));
    double z = (2.30753 + t * 0.27061) / (1 + t * (0.99229 + t * 0.04481)) - t;
    if (p < 0.5)
      z = -z;
    const double al = (z * z - 3) / 6;
    const double h = 2 / (1 / (2 * a - 1) + 1 / (2 * b - 1));
    const double w = z * std::sqrt(al + h) / h
                     - (1 / (2 * b - 1) - 1 / (2 * a - 1))
                           * (al + 5.0 / 6.0 - 2 / (3 * h));
    x = a / (a + b * std::exp(2 * w));
  } else {
    const double lna = std::log(a / (a + b)), lnb = std::log(b / (a + b));
    const double t = std::exp(a * lna) / a;
    const double u = std::exp(b * lnb) / b;
    const double w = t + u;
    if (p < t / w)
      x = std::pow(a * w * p, 1 / a);
    else
      x = 1 - std::pow(b * w * (1 - p), 1 / b);
  }
  if (!(x > 0 && x < 1))
    x = 0.5;

  const double lbeta = log_beta(a, b);
  double lo = 0, hi = 1;
  double best_x = x, best_err = std::numeric_limits<double>::infinity();

  for (int it = 0; it < max_iter; ++it) {
    const double err = reg_inc_beta(x, a, b) - p;
    if (std::abs(err) < best_err) {
      best_err = std::abs(err);
      best_x = x;
    }
    if (std::abs(err) <= 1e-14)
      return x;
    if (err < 0)
      lo = x;
    else
      hi = x;

    // The bracket can no longer be split in double precision.
    if (std::nextafter(lo, 1.0) >= hi)
      break;

    const double log_pdf =
        (a - 1) * std::log(x) + (b - 1) * std::log1p(-x) - lbeta;
    double next = std::numeric_limits<double>::quiet_NaN();
    if (log_pdf < 700) {
      // Halley step.
      const double t = err / std::exp(log_pdf);
      const double curv = t * ((a - 1) / x - (b - 1) / (1 - x));
      next = x - t / (1 - 0.5 * std::min(1.0, curv));
    }
    if (!(next > lo && next < hi)) {
      // Bisect, geometrically when the bracket spans many decades.
      if (lo > 0 && hi / lo > 1e3)
        next = std::sqrt(lo * hi);
      else if (lo == 0 && hi < 1e-3)
        next = hi * 1e-3;
      else if (hi == 1 && lo > 1 - 1e-3)
        next = 1 - (1 - lo) * 1e-3;
      else
        next = 0.5 * (lo + hi);
      // Tail steps can round onto a bracket end.
      if (!(next > lo && next < hi))
        next = 0.5 * (lo + hi);
    }
    if (next == x)
      break;
    x = next;
  }

  if (best_err <= target)
    return best_x;
  if (std::nextafter(lo, 1.0) >= hi)
    return best_x;
  throw NumericError(fmt::format(
      "beta_quantile: no convergence after {} iterations (p={}, a={}, b={}, "
      "residual={})",
      max_iter, p, a, b, best_err));
}

double sample_gamma(double shape, RngStream &rng) {
  if (!is_positive_finite(shape))
    throw DomainError(fmt::format(
        "sample_gamma: shape must be positive and finite (shape={})", shape));
  if (shape >= 1)
    return gamma_squeeze(shape, rng);
  // Boost: G(shape) = G(shape + 1) * U^(1/shape).
  const double g = gamma_squeeze(shape + 1, rng);
  return g * std::pow(rng.uniform(), 1 / shape);
}

double sample_log_gamma(double shape, RngStream &rng) {
  if (!is_positive_finite(shape))
    throw DomainError(fmt::format(
        "sample_log_gamma: shape must be positive and finite (shape={})",
        shape));
  if (shape >= 1)
    return std::log(gamma_squeeze(shape, rng));
  const double g = gamma_squeeze(shape + 1, rng);
  return std::log(g) + std::log(rng.uniform()) / shape;
}

double sample_beta(double a, double b, RngStream &rng) {
  check_shapes(a, b, "sample_beta");
  const double la = sample_log_gamma(a, rng);
  const double lb = sample_log_gamma(b, rng);
  return clamp_open_unit(1 / (1 + std::exp(lb - la)));
}

std::vector<double> sample_dirichlet(std::span<const double> alpha,
                                     RngStream &rng) {
  if (alpha.size() < 2)
    throw DomainError("sample_dirichlet: need at least two components");
  for (double v: alpha) {
    if (!is_positive_finite(v))
      throw DomainError(fmt::format(
          "sample_dirichlet: concentration must be positive (got {})", v));
  }

  std::vector<double> out(alpha.size());
  double max_log = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < alpha.size(); ++s) {
    out[s] = sample_log_gamma(alpha[s], rng);
    max_log = std::max(max_log, out[s]);
  }
  double total = 0;
  for (double &v: out) {
    v = std::exp(v - max_log);
    total += v;
  }
  for (double &v: out)
    v /= total;
  return out;
}

long sample_binomial(long m, double p, RngStream &rng) {
  if (m < 1)
    throw DomainError(
        fmt::format("sample_binomial: trial count must be >= 1 (m={})", m));
  if (!(p >= 0 && p <= 1))
    throw DomainError(
        fmt::format("sample_binomial: p must lie in [0, 1] (p={})", p));

  // Order-statistic splitting (Knuth, TAOCP 3.4.1): the a-th smallest of m
  // uniforms is Beta(a, m + 1 - a); recurse into the side containing p.
  long base = 0;
  long trials = m;
  double prob = p;
  while (trials > 40 && std::min(prob, 1 - prob) * trials > 30) {
    const long a = 1 + trials / 2;
    const long b = trials + 1 - a;
    const double x = sample_beta(static_cast<double>(a),
                                 static_cast<double>(b), rng);
    if (x >= prob) {
      trials = a - 1;
      prob /= x;
    } else {
      base += a;
      trials = b - 1;
      prob = (prob - x) / (1 - x);
    }
    prob = std::clamp(prob, 0.0, 1.0);
  }

  if (trials == 0 || prob == 0)
    return base;
  if (prob == 1)
    return base + trials;
  if (prob <= 0.5)
    return base + binomial_inversion(trials, prob, rng);
  return base + trials - binomial_inversion(trials, 1 - prob, rng);
}

std::vector<long> sample_multinomial(long m, std::span<const double> probs,
                                     RngStream &rng) {
  if (m < 1)
    throw DomainError(
        fmt::format("sample_multinomial: trial count must be >= 1 (m={})", m));
  if (probs.empty())
    throw DomainError("sample_multinomial: empty probability vector");
  for (double v: probs) {
    if (!(v >= 0 && v <= 1))
      throw DomainError(fmt::format(
          "sample_multinomial: probabilities must lie in [0, 1] (got {})", v));
  }

  std::vector<long> counts(probs.size(), 0);
  long remaining = m;
  double mass = std::accumulate(probs.begin(), probs.end(), 0.0);
  for (std::size_t s = 0; s + 1 < probs.size() && remaining > 0; ++s) {
    const double cond = mass > 0 ? std::clamp(probs[s] / mass, 0.0, 1.0) : 0;
    counts[s] = sample_binomial(remaining, cond, rng);
    remaining -= counts[s];
    mass -= probs[s];
  }
  counts.back() += remaining;
  return counts;
}

std::vector<std::size_t> random_permutation(std::size_t n, RngStream &rng) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t {0});
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_index(i));
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

} // namespace bkp

//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>
#include <thread>

#include <fmt/format.h>

#include "bkp/errors.hpp"
#include "bkp/tuning.hpp"

namespace bkp {
namespace {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr double kArmijo = 1e-4;
  constexpr int kMaxBacktracks = 40;

  class BoxedLoss {
  public:
    BoxedLoss(const LossFunction &loss, const VectorRef &lower,
              const VectorRef &upper)
        : loss_(loss), lower_(lower), upper_(upper) { }

    double operator()(const Vector &x) {
      ++evaluations;
      const double f = loss_(x);
      return std::isfinite(f) ? f : kInf;
    }

    Vector project(const Vector &x) const {
      return x.cwiseMax(lower_).cwiseMin(upper_);
    }

    const Vector &lower() const { return lower_; }
    const Vector &upper() const { return upper_; }

    int evaluations = 0;

  private:
    const LossFunction &loss_;
    Vector lower_;
    Vector upper_;
  };

  Vector fd_gradient(BoxedLoss &f, const Vector &x, double fx, double h) {
    Vector g(x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      const bool up = x[j] + h <= f.upper()[j];
      const bool down = x[j] - h >= f.lower()[j];
      Vector xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      const double fp = up ? f(xp) : kInf;
      const double fm = down ? f(xm) : kInf;
      if (std::isfinite(fp) && std::isfinite(fm))
        g[j] = (fp - fm) / (2 * h);
      else if (std::isfinite(fp))
        g[j] = (fp - fx) / h;
      else if (std::isfinite(fm))
        g[j] = (fx - fm) / h;
      else
        g[j] = 0;
    }
    return g;
  }

  // Variables held at a bound by a gradient pointing outward.
  std::vector<bool> free_mask(const Vector &x, const Vector &g,
                              const BoxedLoss &f) {
    std::vector<bool> free(static_cast<std::size_t>(x.size()));
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      const bool at_lo = x[j] <= f.lower()[j] && g[j] > 0;
      const bool at_hi = x[j] >= f.upper()[j] && g[j] < 0;
      free[static_cast<std::size_t>(j)] = !(at_lo || at_hi);
    }
    return free;
  }

  struct Correction {
    Vector s;
    Vector y;
    double rho;
  };

  Vector lbfgs_direction(const Vector &g, const std::deque<Correction> &mem) {
    Vector q = g;
    std::vector<double> alpha(mem.size());
    for (std::size_t k = mem.size(); k-- > 0;) {
      alpha[k] = mem[k].rho * mem[k].s.dot(q);
      q -= alpha[k] * mem[k].y;
    }
    if (!mem.empty()) {
      const auto &last = mem.back();
      q *= last.s.dot(last.y) / last.y.squaredNorm();
    }
    for (std::size_t k = 0; k < mem.size(); ++k) {
      const double beta = mem[k].rho * mem[k].y.dot(q);
      q += (alpha[k] - beta) * mem[k].s;
    }
    return -q;
  }

  struct SimplexResult {
    Vector x;
    double f;
  };

  // Nelder-Mead with every trial point projected into the box.
  SimplexResult bounded_nelder_mead(BoxedLoss &f, const Vector &x0, double f0,
                                    double rel_tol, int max_evals) {
    const Eigen::Index d = x0.size();
    const auto n = static_cast<std::size_t>(d + 1);
    std::vector<Vector> pts(n, x0);
    std::vector<double> vals(n, f0);
    for (Eigen::Index j = 0; j < d; ++j) {
      Vector p = x0;
      const double step = 0.1;
      p[j] = p[j] + step <= f.upper()[j] ? p[j] + step : p[j] - step;
      pts[static_cast<std::size_t>(j + 1)] = f.project(p);
      vals[static_cast<std::size_t>(j + 1)] =
          f(pts[static_cast<std::size_t>(j + 1)]);
    }

    const int budget_end = f.evaluations + max_evals;
    std::vector<std::size_t> order(n);
    while (f.evaluations < budget_end) {
      std::iota(order.begin(), order.end(), std::size_t {0});
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) {
                         return vals[a] < vals[b];
                       });
      const std::size_t best = order.front(), worst = order.back(),
                        second = order[n - 2];
      const double spread = vals[worst] - vals[best];
      if (std::isfinite(spread)
          && spread <= rel_tol * std::max(std::abs(vals[best]), 1e-300))
        break;

      Vector centroid = Vector::Zero(d);
      for (std::size_t k = 0; k + 1 < n; ++k)
        centroid += pts[order[k]];
      centroid /= static_cast<double>(d);

      const Vector xr = f.project(centroid + (centroid - pts[worst]));
      const double fr = f(xr);
      if (fr < vals[best]) {
        const Vector xe = f.project(centroid + 2 * (centroid - pts[worst]));
        const double fe = f(xe);
        if (fe < fr) {
          pts[worst] = xe;
          vals[worst] = fe;
        } else {
          pts[worst] = xr;
          vals[worst] = fr;
        }
        continue;
      }
      if (fr < vals[second]) {
        pts[worst] = xr;
        vals[worst] = fr;
        continue;
      }
      const bool outside = fr < vals[worst];
      const Vector xc = outside
                            ? f.project(centroid + 0.5 * (xr - centroid))
                            : f.project(centroid + 0.5 * (pts[worst] - centroid));
      const double fc = f(xc);
      if (fc < std::min(fr, vals[worst])) {
        pts[worst] = xc;
        vals[worst] = fc;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == best)
          continue;
        const Vector shrunk = pts[best] + 0.5 * (pts[k] - pts[best]);
        moved = moved || shrunk != pts[k];
        pts[k] = shrunk;
        vals[k] = f(pts[k]);
      }
      if (!moved)
        break;
    }
    const auto it = std::min_element(vals.begin(), vals.end());
    return { pts[static_cast<std::size_t>(it - vals.begin())], *it };
  }
} // namespace

LocalSearchResult minimize_bounded(const LossFunction &loss,
                                   const VectorRef &x0, const VectorRef &lower,
                                   const VectorRef &upper,
                                   const OptimizerConfig &config) {
  const Eigen::Index d = x0.size();
  if (d < 1 || lower.size() != d || upper.size() != d)
    throw DomainError("minimize_bounded: dimension mismatch");
  for (Eigen::Index j = 0; j < d; ++j) {
    if (!(lower[j] <= upper[j]))
      throw DomainError("minimize_bounded: empty box");
  }

  BoxedLoss f(loss, lower, upper);
  LocalSearchResult res;
  Vector x = f.project(x0);
  double fx = f(x);
  res.start_loss = fx;
  if (!std::isfinite(fx)) {
    res.x = x;
    res.loss = kInf;
    res.evaluations = f.evaluations;
    res.status = "non-finite loss at start";
    return res;
  }

  const double h = config.fd_step;
  Vector g = fd_gradient(f, x, fx, h);
  std::deque<Correction> memory;
  res.status = "iteration limit";

  int it = 0;
  while (it < config.max_iter) {
    ++it;
    const auto free = free_mask(x, g, f);
    double pg_inf = 0;
    for (Eigen::Index j = 0; j < d; ++j) {
      if (free[static_cast<std::size_t>(j)])
        pg_inf = std::max(pg_inf, std::abs(g[j]));
    }
    if (pg_inf == 0) {
      res.status = "projected gradient vanished";
      break;
    }

    Vector dir = lbfgs_direction(g, memory);
    for (Eigen::Index j = 0; j < d; ++j) {
      if (!free[static_cast<std::size_t>(j)])
        dir[j] = 0;
    }
    if (!(g.dot(dir) < 0)) {
      memory.clear();
      dir = -g;
      for (Eigen::Index j = 0; j < d; ++j) {
        if (!free[static_cast<std::size_t>(j)])
          dir[j] = 0;
      }
    }

    // Unit-length first step keeps the path invariant to loss scaling.
    double t = memory.empty() ? 1.0 / dir.norm() : 1.0;
    Vector xn;
    double fn = kInf;
    bool accepted = false;
    for (int ls = 0; ls < kMaxBacktracks; ++ls, t *= 0.5) {
      xn = f.project(x + t * dir);
      const Vector step = xn - x;
      if (step.isZero(0))
        break;
      fn = f(xn);
      if (fn <= fx + kArmijo * g.dot(step)) {
        accepted = true;
        break;
      }
    }

    if (!accepted) {
      const int budget = 200 * static_cast<int>(d + 1);
      const auto nm = bounded_nelder_mead(f, x, fx, config.rel_tol, budget);
      res.used_fallback = true;
      if (nm.f < fx) {
        x = nm.x;
        fx = nm.f;
        g = fd_gradient(f, x, fx, h);
        memory.clear();
        continue;
      }
      res.status = "line search failed";
      break;
    }

    const Vector gn = fd_gradient(f, xn, fn, h);
    Correction c { xn - x, gn - g, 0 };
    const double sy = c.s.dot(c.y);
    if (sy > 1e-10 * c.s.norm() * c.y.norm()) {
      c.rho = 1 / sy;
      memory.push_back(std::move(c));
      if (static_cast<int>(memory.size()) > config.history)
        memory.pop_front();
    }

    const double decrease = fx - fn;
    const double scale = std::max(std::abs(fx), std::abs(fn));
    x = xn;
    fx = fn;
    g = gn;
    if (decrease <= config.rel_tol * scale) {
      res.status = "converged";
      break;
    }
  }

  res.x = x;
  res.loss = fx;
  res.iterations = it;
  res.evaluations = f.evaluations;
  return res;
}

MultistartResult multistart_optimize(const LossFunction &loss, Eigen::Index d,
                                     const OptimizerConfig &config,
                                     RngStream &rng) {
  if (d < 1)
    throw DomainError("multistart_optimize: d must be >= 1");
  const int n_starts = config.n_starts > 0 ? config.n_starts
                                           : 10 * static_cast<int>(d);
  const auto omega0 =
      config.omega0.empty() ? search_region_omega0(d) : config.omega0;
  if (static_cast<Eigen::Index>(omega0.size()) != d)
    throw DomainError("multistart_optimize: omega0 has the wrong dimension");
  const auto [lo, hi] = config.omega;
  for (const auto &[a, b]: omega0) {
    if (a < lo || b > hi)
      throw DomainError(fmt::format(
          "multistart_optimize: start region [{}, {}] leaves [{}, {}]", a, b,
          lo, hi));
  }

  const Matrix starts = latin_hypercube(n_starts, d, omega0, rng);
  const Vector lower = Vector::Constant(d, lo), upper = Vector::Constant(d, hi);

  const auto n = static_cast<std::size_t>(n_starts);
  std::vector<std::optional<LocalSearchResult>> results(n);
  std::vector<std::string> failures(n);
  std::atomic<std::size_t> next { 0 };
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        results[i] = minimize_bounded(
            loss, starts.row(static_cast<Eigen::Index>(i)).transpose(), lower,
            upper, config);
      } catch (const std::exception &e) {
        failures[i] = e.what();
      }
    }
  };

  const unsigned threads = std::min<unsigned>(
      config.threads > 0 ? config.threads : default_thread_count(),
      static_cast<unsigned>(n));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back(worker);
  }

  MultistartResult out;
  out.loss = kInf;
  out.best_start = n;
  for (std::size_t i = 0; i < n; ++i) {
    StartRecord rec;
    rec.start = starts.row(static_cast<Eigen::Index>(i)).transpose();
    if (results[i]) {
      const auto &r = *results[i];
      rec.terminal = r.x;
      rec.start_loss = r.start_loss;
      rec.loss = r.loss;
      rec.iterations = r.iterations;
      rec.status = r.status;
      if (std::isfinite(r.loss) && r.loss < out.loss) {
        out.loss = r.loss;
        out.gamma = r.x;
        out.best_start = i;
      }
    } else {
      rec.terminal = rec.start;
      rec.start_loss = rec.loss = kInf;
      rec.iterations = 0;
      rec.status = "error: " + failures[i];
    }
    out.starts.push_back(std::move(rec));
  }

  if (out.best_start == n) {
    std::string diag;
    for (std::size_t i = 0; i < n; ++i)
      diag += fmt::format("\n  start {}: {}", i + 1, out.starts[i].status);
    throw OptimizationError("multi-start optimization: no start produced a "
                            "finite loss"
                            + diag);
  }
  return out;
}

} // namespace bkp

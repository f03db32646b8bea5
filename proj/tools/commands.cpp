//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "bkp_cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "bkp/design.hpp"
#include "bkp/errors.hpp"
#include "bkp_cli/io.hpp"

namespace bkp::cli {
namespace {
  // Limits --grid output; beyond this a query file is the better tool.
  constexpr double kMaxGridRows = 1e7;

  double parse_number(std::string_view text) {
    const auto first = text.find_first_not_of(" \t");
    text = first == std::string_view::npos
               ? std::string_view {}
               : text.substr(first, text.find_last_not_of(" \t") - first + 1);
    double v = 0;
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
      throw DomainError(fmt::format("cannot parse '{}' as a number", text));
    return v;
  }

  std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
      const auto pos = text.find(sep, start);
      parts.push_back(text.substr(start, pos - start));
      if (pos == std::string_view::npos)
        return parts;
      start = pos + 1;
    }
  }

  /// Writes to a file, or to the command's stdout stream for "-".
  class Sink {
  public:
    Sink(const std::string &path, std::ostream &fallback) {
      if (path.empty() || path == "-") {
        stream_ = &fallback;
        return;
      }
      file_.open(path);
      if (!file_)
        throw DataError(fmt::format("cannot write '{}'", path));
      stream_ = &file_;
    }

    std::ostream &get() { return *stream_; }

  private:
    std::ofstream file_;
    std::ostream *stream_ = nullptr;
  };

  std::vector<std::string> input_header(Eigen::Index d) {
    std::vector<std::string> header;
    for (Eigen::Index j = 0; j < d; ++j)
      header.push_back(fmt::format("x{}", j + 1));
    return header;
  }

  struct FitArgs {
    std::string data;
    std::string model_out;
    std::string kind = "bkp";
    std::string kernel = "gaussian";
    std::string loss = "brier";
    std::string prior = "noninformative";
    double r0 = 2;
    std::string p0;
    std::string xbounds;
    std::string theta;
    std::optional<int> n_starts;
    std::uint64_t seed = 0;
  };

  struct QueryArgs {
    std::string model;
    std::string query;
    std::optional<long> grid;
    std::string out = "-";
  };

  struct PredictArgs {
    QueryArgs query;
    double ci_level = 0.95;
    double threshold = 0.5;
  };

  struct SimulateArgs {
    QueryArgs query;
    int n_sim = 1;
    std::uint64_t seed = 0;
    std::optional<double> threshold;
    bool labels = false;
  };

  struct BenchArgs {
    std::string target;
    std::optional<long> n;
    std::uint64_t seed = 1;
    std::string out = "-";
    double cycles = 2;
    double sd = 0.05;
    std::string sizes = "200,500,1000";
    int repeats = 3;
  };

  template <class T, class Parse>
  T parse_choice(const std::string &value, Parse parse, const char *what) {
    const auto parsed = parse(value);
    if (!parsed)
      throw DomainError(fmt::format("unknown {} '{}'", what, value));
    return *parsed;
  }

  std::optional<ModelKind> parse_model_kind(std::string_view name) {
    if (name == "bkp")
      return ModelKind::kBkp;
    if (name == "dkp")
      return ModelKind::kDkp;
    return std::nullopt;
  }

  int cmd_fit(const FitArgs &args, std::ostream &out) {
    const auto kind = parse_choice<ModelKind>(args.kind, parse_model_kind,
                                              "model kind");
    FitOptions options;
    options.kernel = parse_choice<KernelFamily>(args.kernel,
                                                parse_kernel_family, "kernel");
    options.loss = parse_choice<LossKind>(args.loss, parse_loss_kind, "loss");
    options.prior.strategy = parse_choice<PriorStrategy>(
        args.prior, parse_prior_strategy, "prior");
    options.prior.r0 = args.r0;
    if (!args.p0.empty())
      options.prior.p0 = parse_number_list(args.p0);
    if (!args.theta.empty()) {
      const auto theta = parse_number_list(args.theta);
      options.theta = Eigen::Map<const Vector>(
          theta.data(), static_cast<Eigen::Index>(theta.size()));
    }
    options.n_multi_start = args.n_starts;
    options.seed = args.seed;

    const auto table = read_csv(args.data);
    const Eigen::Index d = input_columns(table);
    const InputBounds bounds =
        args.xbounds.empty() ? InputBounds::unit(d) : parse_bounds(args.xbounds);
    if (bounds.dim() != d) {
      throw DomainError(fmt::format("--xbounds has {} dimensions, data has {}",
                                    bounds.dim(), d));
    }

    if (kind == ModelKind::kBkp) {
      auto model = fit_bkp(bkp_dataset_from(table, bounds), options);
      out << summary(model);
      save_model(FittedModel(std::move(model)), args.model_out);
    } else {
      auto model = fit_dkp(dkp_dataset_from(table, bounds), options);
      out << summary(model);
      save_model(FittedModel(std::move(model)), args.model_out);
    }
    return kExitOk;
  }

  const KernelModelBase &base_of(const FittedModel &model) {
    return std::visit(
        [](const auto &m) -> const KernelModelBase & { return m; }, model);
  }

  Matrix query_points(const QueryArgs &args, const KernelModelBase &model) {
    if (args.grid) {
      if (!args.query.empty())
        throw DomainError("give either --query or --grid, not both");
      return grid_points(model.bounds(), *args.grid);
    }
    if (args.query.empty())
      throw DomainError("one of --query or --grid is required");
    Matrix x = table_inputs(read_csv(args.query));
    if (x.cols() != model.dim()) {
      throw DomainError(fmt::format(
          "query has {} input columns but the model expects {}", x.cols(),
          model.dim()));
    }
    return x;
  }

  int cmd_predict(const PredictArgs &args, std::ostream &out) {
    const auto model = load_model(args.query.model);
    const auto &base = base_of(model);
    const Matrix x = query_points(args.query, base);
    const Eigen::Index d = x.cols();
    auto header = input_header(d);
    Matrix values;

    if (const auto *bkp = std::get_if<FittedBkp>(&model)) {
      const auto rows = predict(*bkp, x, args.ci_level, args.threshold);
      const bool labelled = !rows.empty() && rows.front().label.has_value();
      for (const char *name: { "mean", "variance", "lower", "upper" })
        header.emplace_back(name);
      if (labelled)
        header.emplace_back("label");
      values.resize(x.rows(), d + 4 + (labelled ? 1 : 0));
      for (Eigen::Index j = 0; j < x.rows(); ++j) {
        const auto &r = rows[static_cast<std::size_t>(j)];
        values.row(j).head(d) = x.row(j);
        values(j, d) = r.mean;
        values(j, d + 1) = r.variance;
        values(j, d + 2) = r.lower;
        values(j, d + 3) = r.upper;
        if (labelled)
          values(j, d + 4) = *r.label;
      }
    } else {
      const auto &dkp = std::get<FittedDkp>(model);
      if (args.threshold != 0.5)
        throw DomainError("--threshold applies to binomial models only");
      const auto rows = predict_dkp(dkp, x, args.ci_level);
      const Eigen::Index q = dkp.classes();
      const bool labelled = !rows.empty() && rows.front().label.has_value();
      for (Eigen::Index s = 1; s <= q; ++s) {
        header.push_back(fmt::format("mean_{}", s));
        header.push_back(fmt::format("var_{}", s));
        header.push_back(fmt::format("lower_{}", s));
        header.push_back(fmt::format("upper_{}", s));
      }
      if (labelled)
        header.emplace_back("label");
      values.resize(x.rows(), d + 4 * q + (labelled ? 1 : 0));
      for (Eigen::Index j = 0; j < x.rows(); ++j) {
        const auto &r = rows[static_cast<std::size_t>(j)];
        values.row(j).head(d) = x.row(j);
        for (Eigen::Index s = 0; s < q; ++s) {
          values(j, d + 4 * s) = r.mean[s];
          values(j, d + 4 * s + 1) = r.variance[s];
          values(j, d + 4 * s + 2) = r.lower[s];
          values(j, d + 4 * s + 3) = r.upper[s];
        }
        // Classes are numbered from 1 as in the y1..yq columns.
        if (labelled)
          values(j, d + 4 * q) = *r.label + 1;
      }
    }
    Sink sink(args.query.out, out);
    write_csv(sink.get(), header, values);
    return kExitOk;
  }

  int cmd_simulate(const SimulateArgs &args, std::ostream &out) {
    const auto model = load_model(args.query.model);
    const Matrix x = query_points(args.query, base_of(model));
    const Eigen::Index d = x.cols();
    const Eigen::Index n_sim = args.n_sim;
    auto header = input_header(d);
    Matrix values;

    if (const auto *bkp = std::get_if<FittedBkp>(&model)) {
      if (args.labels)
        throw DomainError("--labels applies to multinomial models; use "
                          "--threshold for binary labels");
      const auto sim = simulate(*bkp, x, args.n_sim, args.threshold, args.seed);
      if (args.threshold && !sim.labels) {
        throw DomainError(
            "--threshold labels need single-trial training data (all m = 1)");
      }
      for (Eigen::Index r = 1; r <= n_sim; ++r)
        header.push_back(fmt::format("sim_{}", r));
      if (sim.labels) {
        for (Eigen::Index r = 1; r <= n_sim; ++r)
          header.push_back(fmt::format("label_{}", r));
      }
      values.resize(x.rows(), d + n_sim * (sim.labels ? 2 : 1));
      values.leftCols(d) = x;
      values.middleCols(d, n_sim) = sim.draws;
      if (sim.labels)
        values.rightCols(n_sim) = sim.labels->cast<double>();
    } else {
      if (args.threshold)
        throw DomainError("--threshold applies to binomial models only");
      const auto &dkp = std::get<FittedDkp>(model);
      const Eigen::Index q = dkp.classes();
      const auto sim = simulate_dkp(dkp, x, args.n_sim, args.seed, args.labels);
      for (Eigen::Index r = 1; r <= n_sim; ++r) {
        for (Eigen::Index s = 1; s <= q; ++s)
          header.push_back(fmt::format("sim_{}_{}", r, s));
      }
      if (sim.labels) {
        for (Eigen::Index r = 1; r <= n_sim; ++r)
          header.push_back(fmt::format("label_{}", r));
      }
      values.resize(x.rows(), d + n_sim * q + (sim.labels ? n_sim : 0));
      values.leftCols(d) = x;
      for (Eigen::Index j = 0; j < x.rows(); ++j) {
        const Matrix &draws = sim.draws[static_cast<std::size_t>(j)];
        for (Eigen::Index r = 0; r < n_sim; ++r)
          values.row(j).segment(d + r * q, q) = draws.row(r);
        if (sim.labels) {
          values.row(j).tail(n_sim) =
              (sim.labels->row(j).array() + 1).cast<double>().matrix();
        }
      }
    }
    Sink sink(args.query.out, out);
    write_csv(sink.get(), header, values);
    return kExitOk;
  }

  std::string bounds_hint(const InputBounds &bounds) {
    std::vector<std::string> parts;
    for (Eigen::Index j = 0; j < bounds.dim(); ++j) {
      parts.push_back(fmt::format("{}:{}", bounds.lower()[j],
                                  bounds.upper()[j]));
    }
    return fmt::format("--xbounds={}", fmt::join(parts, ","));
  }

  double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }

  double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const auto n = v.size();
    return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
  }

  int cmd_scaling(const BenchArgs &args, std::ostream &out) {
    if (args.repeats < 1)
      throw DomainError("--repeats must be positive");
    std::vector<long> sizes;
    for (const double v: parse_number_list(args.sizes)) {
      if (v < 2 || std::floor(v) != v)
        throw DomainError("--sizes entries must be integers >= 2");
      sizes.push_back(static_cast<long>(v));
    }

    Sink sink(args.out, out);
    sink.get() << "n,fixed_theta_seconds,optimized_seconds\n";
    for (const long n: sizes) {
      const auto data = make_goldstein_data(n, args.seed);
      std::vector<double> fixed, optimized;
      for (int r = 0; r < args.repeats; ++r) {
        FitOptions options;
        options.seed = args.seed;
        options.theta = Vector::Ones(1);
        auto t0 = std::chrono::steady_clock::now();
        static_cast<void>(fit_bkp(data, options));
        fixed.push_back(seconds_since(t0));

        options.theta.reset();
        t0 = std::chrono::steady_clock::now();
        static_cast<void>(fit_bkp(data, options));
        optimized.push_back(seconds_since(t0));
      }
      sink.get() << fmt::format("{},{:.6f},{:.6f}\n", n, median(fixed),
                                median(optimized));
      sink.get().flush();
    }
    return kExitOk;
  }

  int cmd_bench(const BenchArgs &args, std::ostream &out, std::ostream &err) {
    if (args.target == "scaling")
      return cmd_scaling(args, out);

    const auto size = [&args](long fallback) -> Eigen::Index {
      const long n = args.n.value_or(fallback);
      if (n < 1)
        throw DomainError("--n must be positive");
      return n;
    };

    std::variant<BkpDataset, DkpDataset> data;
    if (args.target == "pi1")
      data = make_pi1_data(size(7), args.seed);
    else if (args.target == "pi2")
      data = make_pi2_data(size(30), args.seed);
    else if (args.target == "goldstein")
      data = make_goldstein_data(size(100), args.seed);
    else if (args.target == "multi1d")
      data = make_multi1d_data(size(30), args.seed);
    else if (args.target == "multi2d")
      data = make_multi2d_data(size(100), args.seed);
    else if (args.target == "spirals")
      data = make_spirals_data(size(250), args.cycles, args.sd, args.seed);
    else if (args.target == "iris") {
      if (args.n)
        throw DomainError("iris has a fixed size; drop --n");
      data = iris_sepal_data();
    } else {
      throw DomainError(fmt::format("unknown bench target '{}'", args.target));
    }

    Sink sink(args.out, out);
    std::visit(
        [&](const auto &ds) {
          if constexpr (std::is_same_v<std::decay_t<decltype(ds)>, BkpDataset>)
            write_bkp_dataset(sink.get(), ds);
          else
            write_dkp_dataset(sink.get(), ds);
          err << "fit with " << bounds_hint(ds.bounds) << "\n";
        },
        data);
    return kExitOk;
  }

  void add_query_options(CLI::App *cmd, QueryArgs &args) {
    cmd->add_option("--model", args.model, "Model file from `fit`")
        ->required();
    cmd->add_option("--query", args.query, "CSV with columns x1..xd");
    cmd->add_option("--grid", args.grid,
                    "Use an N-per-dimension mesh over the model bounds");
    cmd->add_option("--out", args.out, "Output CSV (default: stdout)");
  }
} // namespace

InputBounds parse_bounds(std::string_view text) {
  std::vector<double> lower, upper;
  for (const auto part: split(text, ',')) {
    const auto pair = split(part, ':');
    if (pair.size() != 2) {
      throw DomainError(
          fmt::format("bounds entry '{}' is not of the form lo:hi", part));
    }
    lower.push_back(parse_number(pair[0]));
    upper.push_back(parse_number(pair[1]));
  }
  return InputBounds(std::move(lower), std::move(upper));
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  for (const auto part: split(text, ','))
    out.push_back(parse_number(part));
  return out;
}

Matrix grid_points(const InputBounds &bounds, Eigen::Index n) {
  if (n < 2)
    throw DomainError("--grid needs at least 2 points per dimension");
  const Eigen::Index d = bounds.dim();
  if (std::pow(static_cast<double>(n), static_cast<double>(d)) > kMaxGridRows)
    throw DomainError("grid too large; pass query points instead");
  Eigen::Index rows = 1;
  for (Eigen::Index j = 0; j < d; ++j)
    rows *= n;
  Matrix x(rows, d);
  for (Eigen::Index r = 0; r < rows; ++r) {
    Eigen::Index idx = r;
    for (Eigen::Index j = 0; j < d; ++j) {
      const auto k = static_cast<double>(idx % n);
      idx /= n;
      const double lo = bounds.lower()[j], hi = bounds.upper()[j];
      x(r, j) = lo + (hi - lo) * k / static_cast<double>(n - 1);
    }
  }
  return x;
}

int run(int argc, const char *const *argv, std::ostream &out,
        std::ostream &err) {
  CLI::App app { "Beta and Dirichlet kernel process models", "bkp" };
  app.require_subcommand(1);

  FitArgs fit;
  auto *fit_cmd = app.add_subcommand("fit", "Fit a model and save it");
  fit_cmd->add_option("--data", fit.data, "Training CSV")->required();
  fit_cmd->add_option("--model-out", fit.model_out, "Output model file")
      ->required();
  fit_cmd->add_option("--kind", fit.kind, "bkp (binomial) or dkp")
      ->capture_default_str();
  fit_cmd->add_option("--kernel", fit.kernel, "gaussian, matern32, matern52")
      ->capture_default_str();
  fit_cmd->add_option("--loss", fit.loss, "brier or log_loss")
      ->capture_default_str();
  fit_cmd->add_option("--prior", fit.prior,
                      "noninformative, fixed or adaptive")
      ->capture_default_str();
  fit_cmd->add_option("--r0", fit.r0, "Prior precision")->capture_default_str();
  fit_cmd->add_option("--p0", fit.p0, "Prior mean: scalar or comma list");
  fit_cmd->add_option("--xbounds", fit.xbounds,
                      "Input box as lo:hi per dimension, comma separated "
                      "(default: unit cube)");
  fit_cmd->add_option("--theta", fit.theta,
                      "Fixed length scales; skips optimization");
  fit_cmd->add_option("--n-starts", fit.n_starts,
                      "Multi-start count (default: 10 d)");
  fit_cmd->add_option("--seed", fit.seed)->capture_default_str();

  PredictArgs pred;
  auto *pred_cmd = app.add_subcommand("predict", "Posterior summaries");
  add_query_options(pred_cmd, pred.query);
  pred_cmd->add_option("--ci-level", pred.ci_level)->capture_default_str();
  pred_cmd->add_option("--threshold", pred.threshold)->capture_default_str();

  SimulateArgs sim;
  auto *sim_cmd = app.add_subcommand("simulate", "Posterior draws");
  add_query_options(sim_cmd, sim.query);
  sim_cmd->add_option("--n-sim", sim.n_sim)->required();
  sim_cmd->add_option("--seed", sim.seed)->capture_default_str();
  sim_cmd->add_option("--threshold", sim.threshold,
                      "Emit 0/1 labels per draw (binary data only)");
  sim_cmd->add_flag("--labels", sim.labels,
                    "Emit the argmax class of each draw (multinomial)");

  BenchArgs bench;
  auto *bench_cmd =
      app.add_subcommand("bench", "Benchmark datasets and timing runs");
  bench_cmd
      ->add_option("target", bench.target,
                   "pi1, pi2, goldstein, multi1d, multi2d, spirals, iris, "
                   "scaling")
      ->required();
  bench_cmd->add_option("--n", bench.n, "Sample size");
  bench_cmd->add_option("--seed", bench.seed)->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "Output CSV (default: stdout)");
  bench_cmd->add_option("--cycles", bench.cycles, "Spiral turns")
      ->capture_default_str();
  bench_cmd->add_option("--sd", bench.sd, "Spiral noise")
      ->capture_default_str();
  bench_cmd->add_option("--sizes", bench.sizes, "Scaling sample sizes")
      ->capture_default_str();
  bench_cmd->add_option("--repeats", bench.repeats, "Scaling repeats")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*fit_cmd)
      return cmd_fit(fit, out);
    if (*pred_cmd)
      return cmd_predict(pred, out);
    if (*sim_cmd)
      return cmd_simulate(sim, out);
    return cmd_bench(bench, out, err);
  } catch (const NumericError &e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

} // namespace bkp::cli

//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "bkp_cli/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "bkp/errors.hpp"

namespace bkp::cli {
namespace {
  using nlohmann::json;

  std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
      return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
  }

  std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      fields.push_back(trim(line.substr(start, comma - start)));
      if (comma == std::string_view::npos)
        break;
      start = comma + 1;
    }
    return fields;
  }

  json vector_json(const VectorRef &v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
      arr.push_back(v[i]);
    return arr;
  }

  json matrix_json(const MatrixRef &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      rows.push_back(vector_json(m.row(i).transpose()));
    return rows;
  }

  // Infinite losses (failed starts) are stored as null.
  json loss_json(double v) {
    return std::isfinite(v) ? json(v) : json(nullptr);
  }

  double loss_from(const json &j) {
    return j.is_null() ? std::numeric_limits<double>::infinity()
                       : j.get<double>();
  }

  Vector vector_from(const json &j) {
    const auto values = j.get<std::vector<double>>();
    return Eigen::Map<const Vector>(values.data(),
                                    static_cast<Eigen::Index>(values.size()));
  }

  Matrix matrix_from(const json &j, Eigen::Index cols) {
    Matrix m(static_cast<Eigen::Index>(j.size()), cols);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const auto &row = j.at(static_cast<std::size_t>(i));
      if (static_cast<Eigen::Index>(row.size()) != cols)
        throw DataError(fmt::format("model file: row {} has {} entries, "
                                    "expected {}",
                                    i + 1, row.size(), cols));
      for (Eigen::Index c = 0; c < cols; ++c)
        m(i, c) = row.at(static_cast<std::size_t>(c)).get<double>();
    }
    return m;
  }

  template <class Model>
  json common_json(const Model &model, ModelKind kind) {
    json starts = json::array();
    for (const auto &s: model.starts()) {
      starts.push_back({
          { "start", vector_json(s.start) },
          { "terminal", vector_json(s.terminal) },
          { "start_loss", loss_json(s.start_loss) },
          { "loss", loss_json(s.loss) },
          { "iterations", s.iterations },
          { "status", s.status },
      });
    }
    const auto &prior = model.prior();
    return {
      { "format_version", kModelFormatVersion },
      { "model_kind", to_string(kind) },
      { "kernel", to_string(model.kernel().family) },
      { "gamma_opt", vector_json(model.gamma()) },
      { "prior",
        { { "strategy", to_string(prior.strategy) },
          { "r0", prior.r0 },
          { "p0", prior.p0 } } },
      { "loss",
        { { "kind", to_string(model.loss_kind()) },
          { "min", model.loss_min() } } },
      { "theta_user_fixed", model.theta_user_fixed() },
      { "bounds",
        { { "lower", model.bounds().lower() },
          { "upper", model.bounds().upper() } } },
      { "seed", model.seed() },
      { "x_unit", matrix_json(model.table().x) },
      { "starts", std::move(starts) },
    };
  }

  template <class T, class Parse>
  T parse_enum(const json &j, Parse parse, const char *what) {
    const auto name = j.get<std::string>();
    const auto value = parse(name);
    if (!value)
      throw DataError(fmt::format("model file: unknown {} '{}'", what, name));
    return *value;
  }

  FittedModel model_from(const json &doc) {
    const int version = doc.at("format_version").get<int>();
    if (version != kModelFormatVersion) {
      throw DataError(fmt::format("model file: unsupported format_version {}",
                                  version));
    }
    const auto kind_name = doc.at("model_kind").get<std::string>();

    const auto family = parse_enum<KernelFamily>(
        doc.at("kernel"), parse_kernel_family, "kernel");
    KernelSpec kernel { family, vector_from(doc.at("gamma_opt")) };

    const auto &pj = doc.at("prior");
    PriorSpec prior { parse_enum<PriorStrategy>(pj.at("strategy"),
                                                parse_prior_strategy, "prior"),
                      pj.at("r0").get<double>(),
                      pj.at("p0").get<std::vector<double>>() };

    const auto &lj = doc.at("loss");
    const auto loss_kind =
        parse_enum<LossKind>(lj.at("kind"), parse_loss_kind, "loss");
    const double loss_min = lj.at("min").get<double>();

    InputBounds bounds(doc.at("bounds").at("lower").get<std::vector<double>>(),
                       doc.at("bounds").at("upper").get<std::vector<double>>());
    const bool fixed = doc.at("theta_user_fixed").get<bool>();
    const auto seed = doc.at("seed").get<std::uint64_t>();
    Matrix x_unit = matrix_from(doc.at("x_unit"), bounds.dim());

    std::vector<StartRecord> starts;
    for (const auto &s: doc.at("starts")) {
      starts.push_back({ vector_from(s.at("start")),
                         vector_from(s.at("terminal")),
                         loss_from(s.at("start_loss")), loss_from(s.at("loss")),
                         s.at("iterations").get<int>(),
                         s.at("status").get<std::string>() });
    }

    if (kind_name == "bkp") {
      Vector y = vector_from(doc.at("y"));
      Vector m = vector_from(doc.at("m"));
      return FittedBkp(std::move(x_unit), std::move(bounds), std::move(y),
                       std::move(m), std::move(kernel), std::move(prior),
                       loss_kind, loss_min, fixed, seed, std::move(starts));
    }
    if (kind_name == "dkp") {
      const auto q = doc.at("q").get<Eigen::Index>();
      Matrix counts = matrix_from(doc.at("counts"), q);
      return FittedDkp(std::move(x_unit), std::move(bounds), std::move(counts),
                       std::move(kernel), std::move(prior), loss_kind,
                       loss_min, fixed, seed, std::move(starts));
    }
    throw DataError(fmt::format("model file: unknown model_kind '{}'",
                                kind_name));
  }
} // namespace

Eigen::Index CsvTable::column(std::string_view name) const {
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == name)
      return static_cast<Eigen::Index>(c);
  }
  return -1;
}

CsvTable parse_csv(std::istream &in, const std::string &source) {
  CsvTable table;
  std::vector<std::vector<double>> rows;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty())
      continue;
    const auto fields = split(line);
    if (table.header.empty()) {
      for (const auto &f: fields) {
        if (f.empty())
          throw DataError(fmt::format("{}: empty column name in header",
                                      source));
        table.header.emplace_back(f);
      }
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw DataError(fmt::format("{}: line {} has {} fields, expected {}",
                                  source, line_no, fields.size(),
                                  table.header.size()));
    }
    auto &row = rows.emplace_back(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto f = fields[c];
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(),
                                             row[c]);
      if (f.empty() || ec != std::errc() || ptr != f.data() + f.size()) {
        throw DataError(fmt::format(
            "{}: line {}, column '{}': cannot parse '{}' as a number", source,
            line_no, table.header[c], f));
      }
    }
  }
  if (table.header.empty())
    throw DataError(fmt::format("{}: missing header row", source));

  table.values.resize(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(table.header.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t c = 0; c < rows[i].size(); ++c)
      table.values(static_cast<Eigen::Index>(i),
                   static_cast<Eigen::Index>(c)) = rows[i][c];
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw DataError(fmt::format("cannot open '{}'", path.string()));
  return parse_csv(in, path.string());
}

std::string format_number(double v) {
  return fmt::format("{:.17g}", v);
}

void write_csv(std::ostream &out, const std::vector<std::string> &header,
               const MatrixRef &values) {
  out << fmt::format("{}\n", fmt::join(header, ","));
  std::string line;
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    line.clear();
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      if (c > 0)
        line.push_back(',');
      line += format_number(values(i, c));
    }
    line.push_back('\n');
    out << line;
  }
}

std::string_view to_string(ModelKind kind) {
  return kind == ModelKind::kBkp ? "bkp" : "dkp";
}

Eigen::Index input_columns(const CsvTable &table) {
  Eigen::Index d = 0;
  while (static_cast<std::size_t>(d) < table.header.size()
         && table.header[static_cast<std::size_t>(d)]
                == fmt::format("x{}", d + 1))
    ++d;
  if (d == 0)
    throw DataError("expected input columns named x1, x2, ...");
  return d;
}

Matrix table_inputs(const CsvTable &table) {
  const Eigen::Index d = input_columns(table);
  if (static_cast<Eigen::Index>(table.header.size()) != d) {
    throw DataError(fmt::format("unexpected column '{}' after inputs x1..x{}",
                                table.header[static_cast<std::size_t>(d)], d));
  }
  return table.values;
}

BkpDataset bkp_dataset_from(const CsvTable &table, InputBounds bounds) {
  const Eigen::Index d = input_columns(table);
  if (table.header.size() != static_cast<std::size_t>(d) + 2
      || table.header[static_cast<std::size_t>(d)] != "y"
      || table.header[static_cast<std::size_t>(d) + 1] != "m") {
    throw DataError(fmt::format(
        "binomial data needs columns x1..x{},y,m; got {}", d,
        fmt::join(table.header, ",")));
  }
  BkpDataset data { table.values.leftCols(d), std::move(bounds),
                    table.values.col(d), table.values.col(d + 1) };
  data.validate();
  return data;
}

DkpDataset dkp_dataset_from(const CsvTable &table, InputBounds bounds) {
  const Eigen::Index d = input_columns(table);
  const auto cols = static_cast<Eigen::Index>(table.header.size());
  for (Eigen::Index c = d; c < cols; ++c) {
    const auto want = fmt::format("y{}", c - d + 1);
    if (table.header[static_cast<std::size_t>(c)] != want) {
      throw DataError(fmt::format("column {}: expected '{}', got '{}'", c + 1,
                                  want,
                                  table.header[static_cast<std::size_t>(c)]));
    }
  }
  DkpDataset data { table.values.leftCols(d), std::move(bounds),
                    table.values.rightCols(cols - d) };
  data.validate();
  return data;
}

namespace {
  std::vector<std::string> input_header(Eigen::Index d) {
    std::vector<std::string> header;
    for (Eigen::Index j = 0; j < d; ++j)
      header.push_back(fmt::format("x{}", j + 1));
    return header;
  }
} // namespace

void write_bkp_dataset(std::ostream &out, const BkpDataset &data) {
  auto header = input_header(data.dim());
  header.emplace_back("y");
  header.emplace_back("m");
  Matrix values(data.size(), data.dim() + 2);
  values << data.x, data.y, data.m;
  write_csv(out, header, values);
}

void write_dkp_dataset(std::ostream &out, const DkpDataset &data) {
  auto header = input_header(data.dim());
  for (Eigen::Index s = 0; s < data.classes(); ++s)
    header.push_back(fmt::format("y{}", s + 1));
  Matrix values(data.size(), data.dim() + data.classes());
  values << data.x, data.counts;
  write_csv(out, header, values);
}

std::string model_to_json(const FittedModel &model) {
  json doc;
  if (const auto *bkp = std::get_if<FittedBkp>(&model)) {
    doc = common_json(*bkp, ModelKind::kBkp);
    doc["y"] = vector_json(bkp->y());
    doc["m"] = vector_json(bkp->m());
  } else {
    const auto &dkp = std::get<FittedDkp>(model);
    doc = common_json(dkp, ModelKind::kDkp);
    doc["q"] = dkp.classes();
    doc["counts"] = matrix_json(dkp.counts());
  }
  return doc.dump(2) + "\n";
}

FittedModel model_from_json(const std::string &text) {
  try {
    return model_from(json::parse(text));
  } catch (const json::exception &e) {
    throw DataError(fmt::format("malformed model file: {}", e.what()));
  }
}

void save_model(const FittedModel &model, const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out)
    throw DataError(fmt::format("cannot write '{}'", path.string()));
  out << model_to_json(model);
  if (!out)
    throw DataError(fmt::format("failed writing '{}'", path.string()));
}

FittedModel load_model(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw DataError(fmt::format("cannot open '{}'", path.string()));
  std::stringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

} // namespace bkp::cli

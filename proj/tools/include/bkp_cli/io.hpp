//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef BKP_CLI_IO_HPP_
#define BKP_CLI_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "bkp/bkp.hpp"
#include "bkp/dkp.hpp"

namespace bkp::cli {

/// Header plus numeric rows.
struct CsvTable {
  std::vector<std::string> header;
  Matrix values;

  // Index of `name` in the header, or -1.
  Eigen::Index column(std::string_view name) const;
};

// Throws DataError naming the offending row and column.
CsvTable parse_csv(std::istream &in, const std::string &source);
CsvTable read_csv(const std::filesystem::path &path);

// 17 significant digits so every value round-trips.
std::string format_number(double v);
void write_csv(std::ostream &out, const std::vector<std::string> &header,
               const MatrixRef &values);

/// \name Dataset schemas
/// Inputs are the leading x1..xd columns. Binomial data adds `y` and `m`;
/// multinomial data adds y1..yq.
/// @{

enum class ModelKind {
  kBkp,
  kDkp,
};

std::string_view to_string(ModelKind kind);

// Number of leading x1, x2, ... columns. Throws unless at least one exists
// and they are named in order.
Eigen::Index input_columns(const CsvTable &table);

Matrix table_inputs(const CsvTable &table);
BkpDataset bkp_dataset_from(const CsvTable &table, InputBounds bounds);
DkpDataset dkp_dataset_from(const CsvTable &table, InputBounds bounds);

void write_bkp_dataset(std::ostream &out, const BkpDataset &data);
void write_dkp_dataset(std::ostream &out, const DkpDataset &data);

/// @}

/// \name Model files
/// Versioned JSON documents. Doubles are written in shortest round-trip
/// form, so a reloaded model predicts bit-identically.
/// @{

inline constexpr int kModelFormatVersion = 1;

using FittedModel = std::variant<FittedBkp, FittedDkp>;

std::string model_to_json(const FittedModel &model);
FittedModel model_from_json(const std::string &text);

void save_model(const FittedModel &model, const std::filesystem::path &path);
FittedModel load_model(const std::filesystem::path &path);

/// @}

} // namespace bkp::cli

#endif // BKP_CLI_IO_HPP_

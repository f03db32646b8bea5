//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef BKP_CLI_COMMANDS_HPP_
#define BKP_CLI_COMMANDS_HPP_

#include <iosfwd>
#include <string_view>
#include <vector>

#include "bkp/dataset.hpp"

namespace bkp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumeric = 3;

/// Entry point of the `bkp` tool. Normal output goes to `out`, diagnostics
/// to `err`. Returns the process exit code.
int run(int argc, const char *const *argv, std::ostream &out,
        std::ostream &err);

// Parses "lo:hi[,lo:hi...]". Throws DomainError on malformed input.
InputBounds parse_bounds(std::string_view text);

// Parses "a[,b...]". Throws DomainError on malformed input.
std::vector<double> parse_number_list(std::string_view text);

// n^d mesh over the box, first coordinate varying fastest.
Matrix grid_points(const InputBounds &bounds, Eigen::Index n);

} // namespace bkp::cli

#endif // BKP_CLI_COMMANDS_HPP_

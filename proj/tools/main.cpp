//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <iostream>

#include "bkp_cli/commands.hpp"

int main(int argc, char **argv) {
  return bkp::cli::run(argc, argv, std::cout, std::cerr);
}

//
// Project BKP - Copyright 2026 The BKP Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef BKP_ERRORS_HPP_
#define BKP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace bkp {

class Error: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError: public Error {
public:
  using Error::Error;
};

// Malformed or inconsistent dataset (bad counts, out-of-bounds rows, CSV).
class DataError: public Error {
public:
  using Error::Error;
};

// An iterative numerical routine failed to converge.
class NumericError: public Error {
public:
  using Error::Error;
};

class OptimizationError: public NumericError {
public:
  using NumericError::NumericError;
};

} // namespace bkp

#endif // BKP_ERRORS_HPP_

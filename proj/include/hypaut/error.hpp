// Copyright 2026 The hypaut Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPAUT_ERROR_HPP
#define HYPAUT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hypaut {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad field, zero polynomial, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A configured enumeration or table budget would be exceeded.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace hypaut

#endif  // HYPAUT_ERROR_HPP

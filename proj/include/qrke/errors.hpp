// Copyright 2026 The qrke-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace qrke {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid arguments or configuration values.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Mathematical domain violations (|x| > 1 and friends).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Parameters that are formally valid but degenerate for the key exchange,
// e.g. trivial angles.
class DegenerateParameterError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

// Working precision too small for the requested computation.
class PrecisionError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

// Consistency failures that indicate a bug, not bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qrke

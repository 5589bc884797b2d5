// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace nemesis {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid scheme parameters, or operands built over different rings.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Operand is in the wrong representation (coefficient vs. evaluation).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ScaleMismatchError : public Error {
 public:
  using Error::Error;
};

/// A ciphertext at depth 1 cannot absorb another plaintext multiplication.
class DepthExhaustedError : public Error {
 public:
  using Error::Error;
};

/// A message value falls outside the configured magnitude budget.
class RangeError : public Error {
 public:
  using Error::Error;
};

class CacheError : public Error {
 public:
  using Error::Error;
};

/// Malformed, truncated or mismatched binary file.
class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent benchmark or aggregation configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace nemesis

// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_COMMON_ERROR_H_
#define HEFL_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace hefl {

// Root of every error thrown by the library. Callers that only care about
// "something in hefl failed" catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation called on a polynomial in the wrong representation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Operands built over different rings, moduli chains or layouts.
class IncompatibleParams : public Error {
 public:
  using Error::Error;
};

// No modulus left to drop, or multiplicative budget spent.
class LevelExhausted : public Error {
 public:
  using Error::Error;
};

class ScaleMismatch : public Error {
 public:
  using Error::Error;
};

class LevelMismatch : public Error {
 public:
  using Error::Error;
};

// More values than slots.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Non-finite or out-of-range input values.
class ValueError : public Error {
 public:
  using Error::Error;
};

class SecurityError : public Error {
 public:
  using Error::Error;
};

// Model arrays whose names or shapes disagree, or flat vectors of the wrong
// length.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class EmptyModel : public Error {
 public:
  using Error::Error;
};

class EmptyDataset : public Error {
 public:
  using Error::Error;
};

// Training produced a non-finite loss.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// Invalid experiment configuration. `line` is 0 when the problem does not
// come from a config file.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

  // Same line, message prefixed with `context: `.
  ConfigError with_context(const std::string& context) const {
    ConfigError out(context + ": " + what());
    out.line_ = line_;
    return out;
  }

 private:
  int line_;
};

}  // namespace hefl

#endif  // HEFL_COMMON_ERROR_H_

// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace mwlab {

// Numeric values are shared with the C API status codes.
enum class ErrorCode : int {
  ok = 0,
  config = 2,
  capacity = 3,
  blow_up = 4,
  domain = 5,
  unsupported = 6,
  data = 7,
  fit = 8,
  io = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCode::domain, what) {}
};

// An opinion left the ball on which the kernel constants are certified.
class DomainViolation : public DomainError {
 public:
  using DomainError::DomainError;
};

class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& what) : Error(ErrorCode::capacity, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorCode::config, what) {}
};

class UnsupportedOperation : public Error {
 public:
  explicit UnsupportedOperation(const std::string& what)
      : Error(ErrorCode::unsupported, what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorCode::data, what) {}
};

class FitError : public Error {
 public:
  explicit FitError(const std::string& what) : Error(ErrorCode::fit, what) {}
};

class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, double exit_time)
      : Error(ErrorCode::blow_up, what), exit_time_(exit_time) {}
  double exit_time() const noexcept { return exit_time_; }

 private:
  double exit_time_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::io, what) {}
};

}  // namespace mwlab

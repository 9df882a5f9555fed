// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dcone {

enum class ErrorKind {
  NonFinite,
  SignViolation,
  NotSinglePointContact,
  NotCase1,
  AlphaOutOfWindow,
  NoDoubleCones,
  AngleOutOfRange,
  Inadmissible,
  DomainError,
  BoundaryViolation,
  RadiusTooLarge,
  Ambiguous,
  NotCase1Or2,
  NoHalfspaceFamily,
  DegenerateFit,
  NoCurve,
  InsufficientCurves,
  InvalidArgument,
  Io,
  Parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Library error carrying a machine-checkable kind. The message names the
/// violated condition.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dcone

// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#include "dcone/error.hpp"

namespace dcone {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::SignViolation: return "SignViolation";
    case ErrorKind::NotSinglePointContact: return "NotSinglePointContact";
    case ErrorKind::NotCase1: return "NotCase1";
    case ErrorKind::AlphaOutOfWindow: return "AlphaOutOfWindow";
    case ErrorKind::NoDoubleCones: return "NoDoubleCones";
    case ErrorKind::AngleOutOfRange: return "AngleOutOfRange";
    case ErrorKind::Inadmissible: return "Inadmissible";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::BoundaryViolation: return "BoundaryViolation";
    case ErrorKind::RadiusTooLarge: return "RadiusTooLarge";
    case ErrorKind::Ambiguous: return "Ambiguous";
    case ErrorKind::NotCase1Or2: return "NotCase1Or2";
    case ErrorKind::NoHalfspaceFamily: return "NoHalfspaceFamily";
    case ErrorKind::DegenerateFit: return "DegenerateFit";
    case ErrorKind::NoCurve: return "NoCurve";
    case ErrorKind::InsufficientCurves: return "InsufficientCurves";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Io: return "Io";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace dcone

// Copyright 2026 The faith-foe Authors
// SPDX-License-Identifier: Apache-2.0

#include "faith/error.hpp"

namespace faith {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegenerateInput: return "degenerate input";
    case ErrorCode::NoCentroid: return "no centroid";
    case ErrorCode::BehindCamera: return "behind camera";
    case ErrorCode::NoFoe: return "no FOE";
    case ErrorCode::EmptyField: return "empty field";
    case ErrorCode::TooFewVectors: return "too few vectors";
    case ErrorCode::AllIterationsDegenerate: return "all iterations degenerate";
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::DegenerateField: return "degenerate field";
    case ErrorCode::InsufficientData: return "insufficient data";
    case ErrorCode::NoClusters: return "no clusters";
    case ErrorCode::EmptyRange: return "empty range";
    case ErrorCode::EmptyResults: return "empty results";
    case ErrorCode::Io: return "I/O error";
    case ErrorCode::Parse: return "parse error";
  }
  return "unknown error";
}

}  // namespace faith

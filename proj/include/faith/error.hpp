// Copyright 2026 The faith-foe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace faith {

enum class ErrorCode {
  DegenerateInput,         // zero-magnitude flow vector
  NoCentroid,              // empty or sliver polygon
  BehindCamera,            // Z <= 0
  NoFoe,                   // W == 0
  EmptyField,              // no visible scene point
  TooFewVectors,
  AllIterationsDegenerate,
  Domain,                  // parameter outside its valid range
  DimensionMismatch,
  DegenerateField,         // every sampled line pair was parallel
  InsufficientData,
  NoClusters,
  EmptyRange,
  EmptyResults,
  Io,
  Parse,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace faith

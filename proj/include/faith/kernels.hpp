// Copyright 2026 The faith-foe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Data-parallel inner loops shared by the estimators. Each kernel has a scalar
// reference and SIMD variants (AVX2 on x86-64, NEON on AArch64). The variant is
// chosen once at runtime from the CPU's features and can be overridden with
// the FAITH_ISA environment variable (scalar | avx2 | neon) or set_active_isa.
//
// Every variant evaluates the same arithmetic in the same order, so results are
// bit-identical to the scalar reference.

#include <cstddef>
#include <span>
#include <vector>

#include "faith/geometry.hpp"

namespace faith::simd {

enum class Isa { Scalar, Avx2, Neon };

const char* to_string(Isa isa) noexcept;
bool isa_available(Isa isa) noexcept;
Isa best_available_isa() noexcept;
Isa active_isa() noexcept;
/// Throws faith::Error(Domain) if the ISA is not supported on this machine.
void set_active_isa(Isa isa);
std::vector<Isa> available_isas();

/// Structure-of-arrays set of affine forms f_i(x, y) = a_i x + b_i y - c_i,
/// evaluated as ((a_i * x) + (b_i * y)) - c_i.
struct AffineSet {
  std::vector<double> a, b, c;

  std::size_t size() const { return a.size(); }
  void reserve(std::size_t n) { a.reserve(n); b.reserve(n); c.reserve(n); }
  void push_back(double ai, double bi, double ci) {
    a.push_back(ai); b.push_back(bi); c.push_back(ci);
  }

  /// f_i(p) is the signed distance to the i-th half-plane boundary.
  static AffineSet from_half_planes(std::span<const HalfPlane> planes);
  /// f_i(p) is the signed distance to the line through `positions[i]` along
  /// unit direction `directions[i]`.
  static AffineSet from_lines(std::span<const Point2> positions,
                              std::span<const Point2> directions);
};

struct KernelTable {
  // #{i : f_i(p) <= t}
  std::size_t (*count_at_most)(const double* a, const double* b, const double* c,
                               std::size_t n, double x, double y, double t);
  // #{i : |f_i(p)| <= t}
  std::size_t (*count_abs_at_most)(const double* a, const double* b,
                                   const double* c, std::size_t n, double x,
                                   double y, double t);
  // For column j: s = base + step * j; row[j] += 1 if s <= 0 else row[j] *= decay.
  void (*map_update_row)(float* row, std::size_t width, float base, float step,
                         float decay);
  // #{i : (pos_i < column and vel_i > 0) or (pos_i > column and vel_i < 0)}
  std::size_t (*count_axis_disagreements)(const double* pos, const double* vel,
                                          std::size_t n, double column);
};

/// Kernel table of a specific ISA. Throws faith::Error(Domain) if unavailable.
const KernelTable& kernels_for(Isa isa);
/// Kernel table of the active ISA.
const KernelTable& kernels();

std::size_t count_at_most(const AffineSet& set, Point2 p, double t);
std::size_t count_abs_at_most(const AffineSet& set, Point2 p, double t);

}  // namespace faith::simd

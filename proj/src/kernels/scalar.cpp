// Copyright 2026 The faith-foe Authors
// SPDX-License-Identifier: Apache-2.0

// Reference kernels. The SIMD variants must reproduce these bit for bit, so
// the operation order here is the contract.

#include <cmath>

#include "tables.hpp"

namespace faith::simd::detail {
namespace {

std::size_t count_at_most(const double* a, const double* b, const double* c,
                          std::size_t n, double x, double y, double t) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double f = a[i] * x;
    f = f + b[i] * y;
    f = f - c[i];
    count += f <= t;
  }
  return count;
}

std::size_t count_abs_at_most(const double* a, const double* b, const double* c,
                              std::size_t n, double x, double y, double t) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double f = a[i] * x;
    f = f + b[i] * y;
    f = f - c[i];
    count += std::fabs(f) <= t;
  }
  return count;
}

void map_update_row(float* row, std::size_t width, float base, float step,
                    float decay) {
  for (std::size_t j = 0; j < width; ++j) {
    const float s = base + step * static_cast<float>(j);
    row[j] = s <= 0.0f ? row[j] + 1.0f : row[j] * decay;
  }
}

std::size_t count_axis_disagreements(const double* pos, const double* vel,
                                     std::size_t n, double column) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    count += (pos[i] < column && vel[i] > 0.0) || (pos[i] > column && vel[i] < 0.0);
  }
  return count;
}

}  // namespace

const KernelTable kScalarKernels{count_at_most, count_abs_at_most, map_update_row,
                                 count_axis_disagreements};

}  // namespace faith::simd::detail

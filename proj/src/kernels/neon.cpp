// Copyright 2026 The faith-foe Authors
// SPDX-License-Identifier: Apache-2.0

// AArch64 NEON kernels (NEON is baseline on AArch64, no runtime check needed).

#include <arm_neon.h>

#include <cmath>

#include "tables.hpp"

namespace faith::simd::detail {
namespace {

inline float64x2_t affine2(const double* a, const double* b, const double* c,
                           std::size_t i, float64x2_t vx, float64x2_t vy) {
  float64x2_t f = vmulq_f64(vld1q_f64(a + i), vx);
  f = vaddq_f64(f, vmulq_f64(vld1q_f64(b + i), vy));
  return vsubq_f64(f, vld1q_f64(c + i));
}

// Lanes of an all-ones/all-zeros mask, summed.
inline std::size_t lanes(uint64x2_t mask) {
  return static_cast<std::size_t>(vaddvq_u64(vshrq_n_u64(mask, 63)));
}

std::size_t count_at_most(const double* a, const double* b, const double* c,
                          std::size_t n, double x, double y, double t) {
  const float64x2_t vx = vdupq_n_f64(x), vy = vdupq_n_f64(y), vt = vdupq_n_f64(t);
  std::size_t count = 0, i = 0;
  for (; i + 2 <= n; i += 2) count += lanes(vcleq_f64(affine2(a, b, c, i, vx, vy), vt));
  for (; i < n; ++i) {
    double f = a[i] * x;
    f = f + b[i] * y;
    f = f - c[i];
    count += f <= t;
  }
  return count;
}

std::size_t count_abs_at_most(const double* a, const double* b, const double* c,
                              std::size_t n, double x, double y, double t) {
  const float64x2_t vx = vdupq_n_f64(x), vy = vdupq_n_f64(y), vt = vdupq_n_f64(t);
  std::size_t count = 0, i = 0;
  for (; i + 2 <= n; i += 2) {
    count += lanes(vcleq_f64(vabsq_f64(affine2(a, b, c, i, vx, vy)), vt));
  }
  for (; i < n; ++i) {
    double f = a[i] * x;
    f = f + b[i] * y;
    f = f - c[i];
    count += std::fabs(f) <= t;
  }
  return count;
}

void map_update_row(float* row, std::size_t width, float base, float step,
                    float decay) {
  const float32x4_t vbase = vdupq_n_f32(base), vstep = vdupq_n_f32(step);
  const float32x4_t vdecay = vdupq_n_f32(decay), one = vdupq_n_f32(1.0f);
  const uint32_t iota_init[4] = {0, 1, 2, 3};
  const uint32x4_t iota = vld1q_u32(iota_init);
  std::size_t j = 0;
  for (; j + 4 <= width; j += 4) {
    const uint32x4_t idx = vaddq_u32(vdupq_n_u32(static_cast<uint32_t>(j)), iota);
    const float32x4_t s = vaddq_f32(vbase, vmulq_f32(vstep, vcvtq_f32_u32(idx)));
    const uint32x4_t inside = vclezq_f32(s);
    const float32x4_t v = vld1q_f32(row + j);
    vst1q_f32(row + j, vbslq_f32(inside, vaddq_f32(v, one), vmulq_f32(v, vdecay)));
  }
  for (; j < width; ++j) {
    const float s = base + step * static_cast<float>(j);
    row[j] = s <= 0.0f ? row[j] + 1.0f : row[j] * decay;
  }
}

std::size_t count_axis_disagreements(const double* pos, const double* vel,
                                     std::size_t n, double column) {
  const float64x2_t col = vdupq_n_f64(column), zero = vdupq_n_f64(0.0);
  std::size_t count = 0, i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t p = vld1q_f64(pos + i), v = vld1q_f64(vel + i);
    const uint64x2_t before = vandq_u64(vcltq_f64(p, col), vcgtq_f64(v, zero));
    const uint64x2_t after = vandq_u64(vcgtq_f64(p, col), vcltq_f64(v, zero));
    count += lanes(vorrq_u64(before, after));
  }
  for (; i < n; ++i) {
    count += (pos[i] < column && vel[i] > 0.0) || (pos[i] > column && vel[i] < 0.0);
  }
  return count;
}

}  // namespace

const KernelTable kNeonKernels{count_at_most, count_abs_at_most, map_update_row,
                               count_axis_disagreements};

}  // namespace faith::simd::detail

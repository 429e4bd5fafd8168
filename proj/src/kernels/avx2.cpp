// Copyright 2026 The faith-foe Authors
// SPDX-License-Identifier: Apache-2.0

// AVX2 kernels. This translation unit is built with -mavx2 and only entered
// after a runtime CPU check. No FMA: products and sums round separately, as in
// the scalar reference.

#include <immintrin.h>

#include <bit>
#include <cmath>

#include "tables.hpp"

namespace faith::simd::detail {
namespace {

inline __m256d affine4(const double* a, const double* b, const double* c,
                       std::size_t i, __m256d vx, __m256d vy) {
  __m256d f = _mm256_mul_pd(_mm256_loadu_pd(a + i), vx);
  f = _mm256_add_pd(f, _mm256_mul_pd(_mm256_loadu_pd(b + i), vy));
  return _mm256_sub_pd(f, _mm256_loadu_pd(c + i));
}

inline std::size_t lanes(__m256d mask) {
  return static_cast<std::size_t>(std::popcount(
      static_cast<unsigned>(_mm256_movemask_pd(mask))));
}

std::size_t count_at_most(const double* a, const double* b, const double* c,
                          std::size_t n, double x, double y, double t) {
  const __m256d vx = _mm256_set1_pd(x), vy = _mm256_set1_pd(y);
  const __m256d vt = _mm256_set1_pd(t);
  std::size_t count = 0, i = 0;
  for (; i + 4 <= n; i += 4) {
    count += lanes(_mm256_cmp_pd(affine4(a, b, c, i, vx, vy), vt, _CMP_LE_OQ));
  }
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
  const __m256d vx = _mm256_set1_pd(x), vy = _mm256_set1_pd(y);
  const __m256d vt = _mm256_set1_pd(t);
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t count = 0, i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d f = _mm256_andnot_pd(sign, affine4(a, b, c, i, vx, vy));
    count += lanes(_mm256_cmp_pd(f, vt, _CMP_LE_OQ));
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
  const __m256 vbase = _mm256_set1_ps(base), vstep = _mm256_set1_ps(step);
  const __m256 vdecay = _mm256_set1_ps(decay), one = _mm256_set1_ps(1.0f);
  const __m256 zero = _mm256_setzero_ps();
  const __m256i iota = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
  std::size_t j = 0;
  for (; j + 8 <= width; j += 8) {
    const __m256i idx = _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(j)), iota);
    const __m256 s = _mm256_add_ps(vbase, _mm256_mul_ps(vstep, _mm256_cvtepi32_ps(idx)));
    const __m256 inside = _mm256_cmp_ps(s, zero, _CMP_LE_OQ);
    const __m256 v = _mm256_loadu_ps(row + j);
    _mm256_storeu_ps(row + j, _mm256_blendv_ps(_mm256_mul_ps(v, vdecay),
                                               _mm256_add_ps(v, one), inside));
  }
  for (; j < width; ++j) {
    const float s = base + step * static_cast<float>(j);
    row[j] = s <= 0.0f ? row[j] + 1.0f : row[j] * decay;
  }
}

std::size_t count_axis_disagreements(const double* pos, const double* vel,
                                     std::size_t n, double column) {
  const __m256d col = _mm256_set1_pd(column), zero = _mm256_setzero_pd();
  std::size_t count = 0, i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d p = _mm256_loadu_pd(pos + i), v = _mm256_loadu_pd(vel + i);
    const __m256d before = _mm256_and_pd(_mm256_cmp_pd(p, col, _CMP_LT_OQ),
                                         _mm256_cmp_pd(v, zero, _CMP_GT_OQ));
    const __m256d after = _mm256_and_pd(_mm256_cmp_pd(p, col, _CMP_GT_OQ),
                                        _mm256_cmp_pd(v, zero, _CMP_LT_OQ));
    count += lanes(_mm256_or_pd(before, after));
  }
  for (; i < n; ++i) {
    count += (pos[i] < column && vel[i] > 0.0) || (pos[i] > column && vel[i] < 0.0);
  }
  return count;
}

}  // namespace

const KernelTable kAvx2Kernels{count_at_most, count_abs_at_most, map_update_row,
                               count_axis_disagreements};

}  // namespace faith::simd::detail

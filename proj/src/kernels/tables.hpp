// Copyright 2026 The faith-foe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "faith/kernels.hpp"

namespace faith::simd::detail {

extern const KernelTable kScalarKernels;
#if defined(FAITH_HAVE_AVX2_KERNELS)
extern const KernelTable kAvx2Kernels;
#endif
#if defined(FAITH_HAVE_NEON_KERNELS)
extern const KernelTable kNeonKernels;
#endif

}  // namespace faith::simd::detail

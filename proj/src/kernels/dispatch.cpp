// Copyright 2026 The faith-foe Authors
// SPDX-License-Identifier: Apache-2.0

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "faith/error.hpp"
#include "faith/kernels.hpp"
#include "tables.hpp"

namespace faith::simd {

const char* to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(FAITH_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(FAITH_HAVE_NEON_KERNELS)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa best_available_isa() noexcept {
  if (isa_available(Isa::Avx2)) return Isa::Avx2;
  if (isa_available(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
    if (isa_available(isa)) out.push_back(isa);
  }
  return out;
}

namespace {

Isa initial_isa() noexcept {
  if (const char* env = std::getenv("FAITH_ISA")) {
    const std::string_view want(env);
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
      if (want == to_string(isa) && isa_available(isa)) return isa;
    }
  }
  return best_available_isa();
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw Error(ErrorCode::Domain,
                std::string("kernel ISA not available: ") + to_string(isa));
  }
  active().store(isa, std::memory_order_relaxed);
}

const KernelTable& kernels_for(Isa isa) {
  if (!isa_available(isa)) {
    throw Error(ErrorCode::Domain,
                std::string("kernel ISA not available: ") + to_string(isa));
  }
  switch (isa) {
#if defined(FAITH_HAVE_AVX2_KERNELS)
    case Isa::Avx2: return detail::kAvx2Kernels;
#endif
#if defined(FAITH_HAVE_NEON_KERNELS)
    case Isa::Neon: return detail::kNeonKernels;
#endif
    default: return detail::kScalarKernels;
  }
}

const KernelTable& kernels() { return kernels_for(active_isa()); }

AffineSet AffineSet::from_half_planes(std::span<const HalfPlane> planes) {
  AffineSet set;
  set.reserve(planes.size());
  for (const HalfPlane& h : planes) {
    set.push_back(h.normal.x, h.normal.y, dot(h.anchor, h.normal));
  }
  return set;
}

AffineSet AffineSet::from_lines(std::span<const Point2> positions,
                                std::span<const Point2> directions) {
  AffineSet set;
  set.reserve(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const Point2 p = positions[i], d = directions[i];
    // cross(d, q - p) = -d.y * q.x + d.x * q.y - (d.x * p.y - d.y * p.x)
    set.push_back(-d.y, d.x, d.x * p.y - d.y * p.x);
  }
  return set;
}

std::size_t count_at_most(const AffineSet& set, Point2 p, double t) {
  return kernels().count_at_most(set.a.data(), set.b.data(), set.c.data(),
                                 set.size(), p.x, p.y, t);
}

std::size_t count_abs_at_most(const AffineSet& set, Point2 p, double t) {
  return kernels().count_abs_at_most(set.a.data(), set.b.data(), set.c.data(),
                                     set.size(), p.x, p.y, t);
}

}  // namespace faith::simd

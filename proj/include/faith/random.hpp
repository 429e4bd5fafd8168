// Copyright 2026 The faith-foe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace faith {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer. Used to spread seeds so nearby integers give
/// unrelated generator states.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed for a named substream ("scene", "noise", "ransac", ...) of a master
/// seed. Same inputs always give the same seed.
std::uint64_t derive_seed(std::uint64_t master, std::string_view stream,
                          std::uint64_t index = 0) noexcept;

/// Unbiased integer in [0, n). Does not depend on the standard library's
/// distribution implementation, so sample sequences are stable across
/// toolchains.
std::size_t uniform_index(Rng& rng, std::size_t n);

/// Uniform double in [0, 1) with 53 random bits.
double uniform01(Rng& rng) noexcept;

}  // namespace faith

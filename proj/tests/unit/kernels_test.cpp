// Copyright 2026 The faith-foe Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "faith/error.hpp"
#include "faith/kernels.hpp"

namespace faith::simd {
namespace {

struct Inputs {
  std::vector<double> a, b, c;
};

// Lengths around every vector-width remainder.
const std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 33, 100, 1001};

Inputs random_inputs(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1, 1), c(-300, 300);
  Inputs in;
  for (std::size_t i = 0; i < n; ++i) {
    in.a.push_back(u(rng));
    in.b.push_back(u(rng));
    in.c.push_back(c(rng));
  }
  return in;
}

std::size_t naive_count(const Inputs& in, double x, double y, double t, bool absolute) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < in.a.size(); ++i) {
    double f = in.a[i] * x;
    f = f + in.b[i] * y;
    f = f - in.c[i];
    k += (absolute ? std::abs(f) : f) <= t;
  }
  return k;
}

TEST(Dispatch, ScalarAlwaysAvailable) {
  EXPECT_TRUE(isa_available(Isa::Scalar));
  const auto isas = available_isas();
  ASSERT_FALSE(isas.empty());
  EXPECT_EQ(isas.front(), Isa::Scalar);
  EXPECT_TRUE(isa_available(best_available_isa()));
  EXPECT_TRUE(isa_available(active_isa()));
}

TEST(Dispatch, SetActiveIsaRoundTrips) {
  const Isa before = active_isa();
  for (Isa isa : available_isas()) {
    set_active_isa(isa);
    EXPECT_EQ(active_isa(), isa);
    EXPECT_EQ(&kernels(), &kernels_for(isa));
  }
  set_active_isa(before);
}

TEST(Dispatch, UnavailableIsaThrows) {
  for (Isa isa : {Isa::Avx2, Isa::Neon}) {
    if (isa_available(isa)) continue;
    EXPECT_THROW(set_active_isa(isa), Error);
    EXPECT_THROW(kernels_for(isa), Error);
  }
}

TEST(Kernels, ScalarMatchesNaive) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> p(-100, 400);
  const KernelTable& k = kernels_for(Isa::Scalar);
  for (std::size_t n : kSizes) {
    const Inputs in = random_inputs(rng, n);
    for (int r = 0; r < 20; ++r) {
      const double x = p(rng), y = p(rng), t = r % 3 == 0 ? 0.0 : 3.0;
      EXPECT_EQ(k.count_at_most(in.a.data(), in.b.data(), in.c.data(), n, x, y, t),
                naive_count(in, x, y, t, false));
      EXPECT_EQ(k.count_abs_at_most(in.a.data(), in.b.data(), in.c.data(), n, x, y, t),
                naive_count(in, x, y, t, true));
    }
  }
}

class IsaEquivalence : public ::testing::TestWithParam<Isa> {
 protected:
  void SetUp() override {
    if (!isa_available(GetParam())) GTEST_SKIP() << to_string(GetParam()) << " unavailable";
  }
};

TEST_P(IsaEquivalence, CountsMatchScalar) {
  const KernelTable& ref = kernels_for(Isa::Scalar);
  const KernelTable& k = kernels_for(GetParam());
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> p(-100, 400);
  for (std::size_t n : kSizes) {
    const Inputs in = random_inputs(rng, n);
    for (int r = 0; r < 50; ++r) {
      const double x = p(rng), y = p(rng);
      for (double t : {0.0, 1e-6, 3.0}) {
        EXPECT_EQ(k.count_at_most(in.a.data(), in.b.data(), in.c.data(), n, x, y, t),
                  ref.count_at_most(in.a.data(), in.b.data(), in.c.data(), n, x, y, t));
        EXPECT_EQ(k.count_abs_at_most(in.a.data(), in.b.data(), in.c.data(), n, x, y, t),
                  ref.count_abs_at_most(in.a.data(), in.b.data(), in.c.data(), n, x, y, t));
      }
    }
  }
}

// Points placed exactly on boundaries exercise the <= comparison.
TEST_P(IsaEquivalence, BoundaryTiesMatchScalar) {
  const KernelTable& ref = kernels_for(Isa::Scalar);
  const KernelTable& k = kernels_for(GetParam());
  const std::vector<double> a{1, 0, 1, -1, 0.5}, b{0, 1, 1, 0, 0.25}, c{2, 3, 5, -2, 1.75};
  for (std::size_t n = 0; n <= a.size(); ++n) {
    EXPECT_EQ(k.count_at_most(a.data(), b.data(), c.data(), n, 2, 3, 0),
              ref.count_at_most(a.data(), b.data(), c.data(), n, 2, 3, 0));
    EXPECT_EQ(k.count_abs_at_most(a.data(), b.data(), c.data(), n, 2, 3, 0),
              ref.count_abs_at_most(a.data(), b.data(), c.data(), n, 2, 3, 0));
  }
  EXPECT_EQ(ref.count_at_most(a.data(), b.data(), c.data(), 5, 2, 3, 0), 5u);
}

TEST_P(IsaEquivalence, MapRowBitIdentical) {
  const KernelTable& ref = kernels_for(Isa::Scalar);
  const KernelTable& k = kernels_for(GetParam());
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<float> base(-200, 200), step(-1, 1), val(0, 50);
  for (std::size_t w : kSizes) {
    for (int r = 0; r < 30; ++r) {
      std::vector<float> row(w);
      for (float& v : row) v = val(rng);
      std::vector<float> other = row;
      const float b = base(rng), s = r == 0 ? 0.0f : step(rng);
      const float decay = r % 2 ? 0.999f : 1.0f;
      ref.map_update_row(row.data(), w, b, s, decay);
      k.map_update_row(other.data(), w, b, s, decay);
      ASSERT_EQ(std::memcmp(row.data(), other.data(), w * sizeof(float)), 0);
    }
  }
}

TEST_P(IsaEquivalence, AxisDisagreementsMatchScalar) {
  const KernelTable& ref = kernels_for(Isa::Scalar);
  const KernelTable& k = kernels_for(GetParam());
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> pos(0, 240), vel(-5, 5);
  for (std::size_t n : kSizes) {
    std::vector<double> p(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = i % 7 == 0 ? std::floor(pos(rng)) : pos(rng);
      v[i] = i % 5 == 0 ? 0.0 : vel(rng);
    }
    for (int col = 0; col <= 240; ++col) {
      EXPECT_EQ(k.count_axis_disagreements(p.data(), v.data(), n, col),
                ref.count_axis_disagreements(p.data(), v.data(), n, col));
    }
  }
}

TEST(Kernels, AxisDisagreementDefinition) {
  const KernelTable& k = kernels_for(Isa::Scalar);
  const std::vector<double> p{1, 5, 9, 5}, v{-1, 3, 1, -2};
  // column 5: pos 1 moving left agrees, pos 9 moving right agrees, the two at 5 never disagree.
  EXPECT_EQ(k.count_axis_disagreements(p.data(), v.data(), 4, 5.0), 0u);
  // column 0: everything right of it should move right; v=-1 and v=-2 disagree.
  EXPECT_EQ(k.count_axis_disagreements(p.data(), v.data(), 4, 0.0), 2u);
}

TEST(AffineSet, HalfPlaneFormIsSignedDistance) {
  const std::vector<HalfPlane> planes{{{3, 4}, {0.6, 0.8}}, {{-1, 2}, {-1, 0}}};
  const AffineSet set = AffineSet::from_half_planes(planes);
  ASSERT_EQ(set.size(), 2u);
  const Point2 p{7, -2};
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_NEAR(set.a[i] * p.x + set.b[i] * p.y - set.c[i], planes[i].signed_distance(p), 1e-12);
  }
  EXPECT_EQ(count_at_most(set, {3, 4}, 0.0), 2u);
  EXPECT_EQ(count_at_most(set, {-5, 0}, 0.0), 1u);
}

TEST(AffineSet, LineFormIsPerpendicularDistance) {
  const std::vector<Point2> pos{{0, 0}, {10, 0}}, dir{{1, 0}, {0, 1}};
  const AffineSet set = AffineSet::from_lines(pos, dir);
  EXPECT_EQ(count_abs_at_most(set, {10, 0}, 1e-12), 2u);
  EXPECT_EQ(count_abs_at_most(set, {10, 3}, 2.9), 1u);
  EXPECT_EQ(count_abs_at_most(set, {4, 3}, 3.0), 1u);
}

INSTANTIATE_TEST_SUITE_P(Simd, IsaEquivalence, ::testing::Values(Isa::Avx2, Isa::Neon),
                         [](const auto& info) { return std::string(to_string(info.param)); });

}  // namespace
}  // namespace faith::simd

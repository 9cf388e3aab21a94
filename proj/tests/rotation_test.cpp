#include <gtest/gtest.h>

#include <cmath>

#include "primend/random.hpp"
#include "primend/rotation.hpp"

using namespace primend;

namespace {

Rational q(long p, long d) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

// 10^6-iterate orbit average of the four-breakpoint map, computed with the
// naive evaluator in tests/oracles.hpp.
constexpr double kFourPointRho = 0.189868280018830;
// Same oracle for random_pl_map(42, 8); the lift has rotation number ~1.
constexpr double kSeed42Rho = 0.999999144440751;

const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;

}  // namespace

TEST(RotInterval, Examples) {
  auto third = rot_interval(ExactPLMap::rotation(q(1, 3)), 3);
  // Three steps land on 1 up to rounding, and the outward push makes the
  // two orbits straddle it.
  EXPECT_EQ(third.lo, 0.0);
  EXPECT_EQ(third.hi, 2.0 / 3.0);
  EXPECT_TRUE(third.contains(1.0 / 3.0));

  // A non-integer displacement pins the rotation number between
  // consecutive multiples of 1/n.
  auto golden = rot_interval(PLMap::rotation(kGolden), 2000);
  EXPECT_EQ(golden.width(), 1.0 / 2000);
  EXPECT_TRUE(golden.contains(kGolden));

  auto four = rot_interval(PLMap::make({{0.0, 0.1}, {0.25, 0.6}, {0.5, 0.75}, {0.75, 0.9}}, 1), 5000);
  EXPECT_EQ(four.width(), 1.0 / 5000);
  EXPECT_TRUE(four.contains(kFourPointRho));
}

TEST(RotInterval, RejectsReversing) {
  try {
    rot_interval(PLMap::reflection(), 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OrientationReversing);
  }
}

TEST(RotExact, Examples) {
  EXPECT_EQ(rot_exact_rational(ExactPLMap::rotation(q(1, 2)), 4), q(1, 2));
  EXPECT_FALSE(rot_exact_rational(ExactPLMap::rotation(q(1, 3)), 2).has_value());
  EXPECT_EQ(rot_exact_rational(ExactPLMap::rotation(q(1, 3)), 3), q(1, 3));
  auto pl = ExactPLMap::make({{q(0, 1), q(1, 4)}, {q(1, 2), q(3, 4)}}, 1);
  EXPECT_EQ(rot_exact_rational(pl, 4), q(1, 4));
  EXPECT_THROW(rot_exact_rational(PLMap::rotation(0.5), 4), Error);
}

TEST(RotExact, NonRigidPeriodicOrbit) {
  // Rational map with a period-3 attracting orbit: breakpoints chosen so
  // that 0 -> 1/3 -> 2/3 -> 1 while slopes vary.
  auto m = ExactPLMap::make({{q(0, 1), q(1, 3)}, {q(1, 6), q(2, 5)}, {q(1, 3), q(2, 3)},
                             {q(1, 2), q(3, 4)}, {q(2, 3), q(1, 1)}},
                            1);
  EXPECT_EQ(rot_exact_rational(m, 10), q(1, 3));
}

TEST(RotExact, PowerRule) {
  for (int seed = 0; seed < 15; ++seed) {
    auto g = random_exact_pl_map(900 + seed, 4, 24);
    auto r = rot_exact_rational(g, 12);
    if (!r) continue;
    const long qden = r->get_den().get_si();
    EXPECT_EQ(rot_exact_rational(power(g, static_cast<int>(qden)), 2), Rational(0)) << seed;
  }
}

TEST(Rot, Examples) {
  auto rev = rot(ExactPLMap::reflection(), 1e-6);
  EXPECT_EQ(rev.value, 0.0);
  ASSERT_EQ(rev.fixed_points.size(), 2u);
  EXPECT_EQ(rev.fixed_points[0], 0.0);
  EXPECT_EQ(rev.fixed_points[1], 0.5);

  auto quarter = rot(ExactPLMap::rotation(q(1, 4)), 1e-6);
  EXPECT_EQ(quarter.value, 0.25);
  ASSERT_TRUE(quarter.exact.has_value());
  EXPECT_EQ(*quarter.exact, q(1, 4));

  auto random = rot(random_pl_map(42, 8), 1e-4);
  EXPECT_LE(circle_distance(random.value, kSeed42Rho), 1e-4);
  EXPECT_FALSE(random.exact.has_value());
}

TEST(Rot, ReversingFixedPointsOfGeneralMap) {
  auto m = ExactPLMap::make({{q(0, 1), q(1, 3)}, {q(1, 2), q(-1, 10)}}, -1);
  auto fixed = reversing_fixed_points(m);
  for (const auto& x : fixed) EXPECT_EQ(m.evaluate(x), x);
  EXPECT_NE(fixed[0], fixed[1]);
}

TEST(Rot, ToleranceErrors) {
  EXPECT_THROW(rot(PLMap::rotation(0.1), 0.0), Error);
  try {
    rot(PLMap::rotation(kGolden), 1e-8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ToleranceUnreachable);
  }
}

TEST(RotProperty, IntervalsNestAndIgnoreStartPoint) {
  for (int seed = 0; seed < 10; ++seed) {
    auto g = random_pl_map(seed, 6);
    std::vector<RotInterval> ivs;
    for (std::int64_t n : {100, 400, 1600, 6400}) {
      ivs.push_back(rot_interval(g, n, 0.0));
      EXPECT_LE(ivs.back().width(), 2.0 / static_cast<double>(n));
    }
    for (const auto& a : ivs)
      for (const auto& b : ivs) EXPECT_LE(std::max(a.lo, b.lo), std::min(a.hi, b.hi));
    SeededRng rng(seed);
    std::vector<RotInterval> starts;
    for (int s = 0; s < 6; ++s) starts.push_back(rot_interval(g, 1000, rng.uniform()));
    for (const auto& a : starts)
      for (const auto& b : starts) EXPECT_LE(std::max(a.lo, b.lo), std::min(a.hi, b.hi));
  }
}

TEST(RotProperty, ConjugacyInvariance) {
  const double tol = 1e-4;
  for (int seed = 0; seed < 10; ++seed) {
    auto g = random_pl_map(1000 + seed, 5);
    auto h = random_pl_map(2000 + seed, 4);
    const double a = rot(g, tol).value;
    const double b = rot(conjugate(h, g), tol).value;
    EXPECT_LE(circle_distance(a, b), 2 * tol) << seed;
  }
}

TEST(RotProperty, ContinuityOnRigidFamily) {
  const Rational alpha = q(2, 7);
  const double base = rot(ExactPLMap::rotation(alpha), 1e-6).value;
  for (long k = 1; k <= 5; ++k) {
    const Rational delta = q(1, 1000 * k);
    const double moved = rot(ExactPLMap::rotation(alpha + delta), 1e-6).value;
    EXPECT_NEAR(moved - base, delta.get_d(), 1e-12);
  }
}

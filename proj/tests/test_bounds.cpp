#include <gtest/gtest.h>

#include <cmath>

#include "isoppp/bounds.hpp"
#include "isoppp/error.hpp"
#include "oracle.hpp"

using namespace isoppp;
using oracle::kPi;

namespace {

ChannelModel channel(double alpha, double c, FadingLaw fading = FadingLaw::rayleigh()) {
  return ChannelModel{alpha, c, std::move(fading)};
}

}  // namespace

TEST(SubharmonicRegion, ConstantIsEverywhere) {
  const RadialRegion r = subharmonic_region(constant_shape(1), 0.1, 100);
  ASSERT_EQ(r.intervals.size(), 1u);
  EXPECT_EQ(r.intervals[0].low, 0.0);
  EXPECT_TRUE(std::isinf(r.intervals[0].high));
}

TEST(SubharmonicRegion, ScatteredStartsAtDecayLength) {
  // F'' + F'/r = e^{-r} (1 - 1/r) >= 0 exactly for r >= 1.
  const RadialRegion r = subharmonic_region(scattered_shape(1.0), 0.01, 40);
  ASSERT_EQ(r.intervals.size(), 1u);
  EXPECT_NEAR(r.intervals[0].low, 1.0, 0.02);
  EXPECT_TRUE(std::isinf(r.intervals[0].high));
  EXPECT_TRUE(r.containing(3.0).has_value());
  EXPECT_FALSE(r.containing(0.5).has_value());
}

TEST(SubharmonicRegion, CarrierSenseHoleIsADisc) {
  const RadialRegion r = subharmonic_region(carrier_sense_shape(1e-5, 4));
  ASSERT_FALSE(r.intervals.empty());
  EXPECT_EQ(r.intervals[0].low, 0.0);
  EXPECT_GT(r.intervals[0].high, 10.0);
  EXPECT_TRUE(r.containing(0.0).has_value());
}

TEST(SubharmonicRegion, AgreesWithLaplacianSign) {
  const ShapeFunction s = carrier_sense_shape(1e-5, 4);
  const RadialRegion region = subharmonic_region(s);
  // Laplacian by differences of F itself, independent of the derivative.
  auto lap = [&](double r) {
    const double h = 1e-3;
    return (s(r + h) - 2 * s(r) + s(r - h)) / (h * h) + (s(r + h) - s(r - h)) / (2 * h * r);
  };
  for (double r = 1; r < 100; r += 0.37) {
    const bool inside = region.containing(r).has_value();
    const double l = lap(r);
    if (std::abs(l) > 1e-6) EXPECT_EQ(inside, l > 0) << r;
  }
}

TEST(MaxInscribedRadius, Examples) {
  const RadialRegion inf{{{0.0, INFINITY}}};
  EXPECT_TRUE(std::isinf(max_inscribed_radius(inf, 3.0)));
  const RadialRegion ann{{{1.0, INFINITY}}};
  EXPECT_DOUBLE_EQ(max_inscribed_radius(ann, 3.0), 2.0);
  const RadialRegion band{{{2.0, 5.0}}};
  EXPECT_DOUBLE_EQ(max_inscribed_radius(band, 4.0), 1.0);
  const RadialRegion disc{{{0.0, 5.0}}};
  EXPECT_DOUBLE_EQ(max_inscribed_radius(disc, 0.0), 5.0);
  try {
    max_inscribed_radius(ann, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutsideRegion);
  }
}

TEST(LowerTailBound, UnitFadingClosedForm) {
  const ShapeFunction s = scattered_shape(1.0);
  const RadialRegion region{{{1.0, INFINITY}}};
  const double lambda = 1e-2, y0 = 3, z = 0.1, c = 1;
  const double rbar = 2.0;
  const double reach2 = std::pow(1 / z - c, 2.0 / 4);
  const double expect = 1 - std::exp(-kPi * lambda * s(y0) * std::min(rbar * rbar, reach2));
  EXPECT_NEAR(lower_tail_bound(s, region, channel(4, c, FadingLaw::unit()), lambda, y0, z), expect, 1e-15);
  EXPECT_EQ(lower_tail_bound(s, region, channel(4, c, FadingLaw::unit()), lambda, y0, 2.0), 0.0);
}

TEST(LowerTailBound, CustomFadingReproducesUnit) {
  const ShapeFunction s = scattered_shape(1.0);
  const RadialRegion region{{{1.0, INFINITY}}};
  const FadingLaw step = FadingLaw::custom([](RandomEngine&) { return 1.0; },
                                           [](double x) { return x <= 1.0 ? 1.0 : 0.0; });
  for (double z : {0.01, 0.1, 0.5}) {
    const double u = lower_tail_bound(s, region, channel(4, 1, FadingLaw::unit()), 1e-2, 3, z);
    const double g = lower_tail_bound(s, region, channel(4, 1, step), 1e-2, 3, z);
    EXPECT_NEAR(g, u, 1e-12 * u) << z;
  }
}

TEST(LowerTailBound, RayleighAgainstQuadrature) {
  const ShapeFunction s = scattered_shape(1.0);
  const RadialRegion region{{{1.0, INFINITY}}};
  for (double z : {0.01, 0.1, 1.0}) {
    const double inner = oracle::quad([=](double r) { return r * std::exp(-z * (1 + std::pow(r, 4))); }, 0, 2);
    const double expect = -std::expm1(-2 * kPi * 1e-2 * s(3.0) * inner);
    EXPECT_NEAR(lower_tail_bound(s, region, channel(4, 1), 1e-2, 3, z), expect, 1e-9 * expect) << z;
  }
}

TEST(LowerTailBound, NonincreasingInLevel) {
  const ShapeFunction s = scattered_shape(1.0);
  double prev = 1;
  for (double z = 1e-3; z < 10; z *= 1.4) {
    const double v = lower_tail_bound(s, channel(4, 1), 1e-2, 3, z);
    EXPECT_LE(v, prev + 1e-15);
    prev = v;
  }
  EXPECT_THROW(lower_tail_bound(s, channel(4, 1), 1e-2, 0.5, 0.1), Error);
}

TEST(MarkovUpperTail, Values) {
  EXPECT_NEAR(markov_upper_tail(constant_shape(1), channel(4, 1), 1e-3, 0, 1), 1e-3 * kPi * kPi / 2, 1e-14);
  EXPECT_EQ(markov_upper_tail(constant_shape(1), channel(4, 1), 1e-3, 0, 1e-6), 1.0);
  const double m1 = markov_upper_tail(scattered_shape(10), channel(4, 1), 1e-3, 5, 1.0);
  const double m4 = markov_upper_tail(scattered_shape(10), channel(4, 1), 1e-3, 5, 4.0);
  EXPECT_NEAR(m1 / m4, 4.0, 1e-12);
}

TEST(Bounds, LowerNeverExceedsUpper) {
  const ShapeFunction s = scattered_shape(1.0);
  for (double z = 1e-3; z < 1; z *= 2) {
    const double lo = lower_tail_bound(s, channel(4, 1), 1e-1, 3, z);
    const double hi = markov_upper_tail(s, channel(4, 1), 1e-1, 3, z);
    EXPECT_LE(lo, hi) << z;
  }
}

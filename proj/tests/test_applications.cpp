#include <gtest/gtest.h>

#include <cmath>

#include "isoppp/analytic.hpp"
#include "isoppp/applications.hpp"
#include "isoppp/error.hpp"
#include "isoppp/outage.hpp"
#include "oracle.hpp"

using namespace isoppp;
using oracle::kPi;

namespace {

ChannelModel channel(double alpha, double c) { return ChannelModel{alpha, c, FadingLaw::rayleigh()}; }

LinkConfig link(double y0, double d, double beta) {
  LinkConfig l;
  l.y0_norm = y0;
  l.distance = d;
  l.beta = beta;
  return l;
}

// A2 at the origin for an exponential density, straight from the definition:
// pi int rho^-1 e^{-r/rho} log(1 + r^2 / s) dr.
double scattered_a2_origin(double rho, double s) {
  return kPi * oracle::quad_to_inf([=](double r) { return std::exp(-r / rho) / rho * std::log1p(r * r / s); }, 0);
}

}  // namespace

TEST(Capacity, StationaryClosedForm) {
  const double expect = -std::log(0.9) * 0.9 / (100 * kPi * kPi / 2);
  EXPECT_NEAR(local_transmission_capacity(constant_shape(1), channel(4, 0), link(0, 10, 1), 0.1), expect,
              1e-12 * expect);
}

TEST(Capacity, ScatteredAlphaTwo) {
  const double s = 0.5 * 100;
  const double expect = -std::log(0.9) * 0.9 / (s * scattered_a2_origin(100, s));
  EXPECT_NEAR(local_transmission_capacity(scattered_shape(100), channel(2, 0), link(0, 10, 0.5), 0.1), expect,
              1e-8 * expect);
}

TEST(Capacity, LinearForSmallConstraint) {
  const ShapeFunction s = scattered_shape(100);
  const double c1 = local_transmission_capacity(s, channel(4, 0), link(20, 10, 1), 1e-6);
  const double c2 = local_transmission_capacity(s, channel(4, 0), link(20, 10, 1), 2e-6);
  EXPECT_NEAR(c2 / c1, 2.0, 1e-5);
}

TEST(Capacity, RoundTripThroughOutage) {
  const ShapeFunction a = finite_network_shape(500, 800);
  for (double eps : {0.01, 0.1, 0.3})
    for (double y0 : {0.0, 400.0, 700.0}) {
      LinkConfig l = link(y0, 10, 1);
      l.lambda_scale = capacity_intensity(a, channel(4, 0), l, eps);
      EXPECT_NEAR(outage_exact(a, channel(4, 0), l), eps, 1e-9) << eps << " " << y0;
    }
}

TEST(Capacity, Preconditions) {
  EXPECT_THROW(local_transmission_capacity(constant_shape(1), channel(4, 1), link(0, 10, 1), 0.1), Error);
  EXPECT_THROW(local_transmission_capacity(constant_shape(1), channel(4, 0), link(0, 10, 1), 1.0), Error);
}

TEST(FhDs, UnitGainIsOne) {
  const FhDsGain g = fh_ds_gain(scattered_shape(100), 10, 0.5, 1.0);
  EXPECT_DOUBLE_EQ(g.ratio, 1.0);
  EXPECT_DOUBLE_EQ(g.asymptote, 1.0);
}

TEST(FhDs, RatioMatchesDefinitionAndGrows) {
  const double s = 0.5 * 100;
  double prev = 1.0;
  for (double M : {2.0, 4.0, 16.0, 256.0}) {
    const FhDsGain g = fh_ds_gain(scattered_shape(100), 10, 0.5, M);
    EXPECT_NEAR(g.ratio, scattered_a2_origin(100, s / M) / scattered_a2_origin(100, s), 1e-8);
    EXPECT_GT(g.ratio, prev);
    prev = g.ratio;
  }
}

TEST(FhDs, AsymptoticSlope) {
  const ShapeFunction s = scattered_shape(100);
  const double a2 = scattered_a2_origin(100, 50);
  const double r3 = fh_ds_gain(s, 10, 0.5, 1e3).ratio;
  const double r4 = fh_ds_gain(s, 10, 0.5, 1e4).ratio;
  const double slope = (r4 - r3) / std::log(10.0);
  EXPECT_NEAR(slope, kPi / a2, 0.05 * kPi / a2);
  EXPECT_NEAR(fh_ds_gain(s, 10, 0.5, 1e4).asymptote, 1 + kPi * std::log(1e4) / a2, 1e-8);
}

TEST(Csma, LargeScaleDensity) {
  const double x = kPi * std::tgamma(1.5) * std::pow(1e-5, -0.5);
  EXPECT_NEAR(csma_large_scale_density(1e-3, 4, 1e-5), -std::expm1(-1e-3 * x) / x, 1e-18);
  EXPECT_NEAR(csma_large_scale_density(1e-12, 4, 1e-5) / 1e-12, 1.0, 1e-3);
  EXPECT_NEAR(csma_large_scale_density(1e-3, 4, 1e12) / 1e-3, 1.0, 1e-3);
  double prev = 0;
  for (double lambda = 1e-6; lambda < 10; lambda *= 2) {
    const double v = csma_large_scale_density(lambda, 4, 1e-5);
    // Strictly increasing until exp(-lambda X) underflows against 1.
    if (lambda < 1e-2) EXPECT_GT(v, prev);
    else EXPECT_GE(v, prev);
    EXPECT_LE(v, csma_saturation_density(4, 1e-5));
    prev = v;
  }
}

TEST(Csma, ShapeIsTheCarrierSenseDensity) {
  const ShapeFunction s = csma_shape(1e-5, 4);
  for (double r : {0.0, 5.0, 17.0, 40.0, 200.0}) EXPECT_NEAR(s(r), 1 - std::exp(-1e-5 * std::pow(r, 4)), 1e-15);
}

TEST(Csma, AccuracyLossProfile) {
  EXPECT_LE(csma_accuracy_loss(1e-3, 4, 1e-5, 0.01, 1), 1e-3);
  const double mid = csma_accuracy_loss(1e-3, 4, 1e-5, 10, 1);
  EXPECT_GT(mid, 0.1);
  EXPECT_LE(csma_accuracy_loss(1e-3, 4, 1e-5, 150, 1), 1e-3);
  EXPECT_THROW(csma_accuracy_loss(1e-3, 2, 1e-5, 10, 1), Error);
}

#pragma once

#include "isoppp/analytic.hpp"
#include "isoppp/shapes.hpp"

namespace isoppp {

/// lambda(y0, eps) (1 - eps): the density of successful transmissions when the
/// intensity scale is pushed up until the Rayleigh outage at y0 reaches eps.
/// Needs c = 0, alpha in {2, 4} and a noise-free link; link.lambda_scale is
/// ignored.
double local_transmission_capacity(const ShapeFunction& shape, const ChannelModel& channel,
                                   const LinkConfig& link, double epsilon, double tol = 1e-10);

/// Intensity scale at which the outage at link.y0_norm equals epsilon.
double capacity_intensity(const ShapeFunction& shape, const ChannelModel& channel,
                          const LinkConfig& link, double epsilon, double tol = 1e-10);

struct FhDsGain {
  double ratio;      ///< A2(o, beta d^2 / M) / A2(o, beta d^2)
  double asymptote;  ///< 1 + pi F(0) log(M) / A2(o, beta d^2)
};

/// Capacity gain of frequency hopping over direct sequence spreading with
/// processing gain M at the origin (alpha = 2, c = 0, Rayleigh, no noise).
FhDsGain fh_ds_gain(const ShapeFunction& shape, double distance, double beta, double processing_gain,
                    double tol = 1e-10);

/// Large-scale density of a carrier-sensing network with potential
/// transmitter density lambda and sensing threshold delta (linear units).
double csma_large_scale_density(double lambda_potential, double alpha, double delta_sense);

/// Limit of csma_large_scale_density as lambda -> inf.
double csma_saturation_density(double alpha, double delta_sense);

/// 1 - exp(-delta r^alpha); scale it by csma_large_scale_density.
ShapeFunction csma_shape(double delta_sense, double alpha);

/// |P_o(o, d) - P_o(y0, d)| / P_o(y0, d) with |y0| = d for the carrier-sense
/// density (alpha = 4, c = 0, Rayleigh, no noise).
double csma_accuracy_loss(double lambda_potential, double alpha, double delta_sense,
                          double distance, double beta, double tol = 1e-10);

}  // namespace isoppp

#include "isoppp/applications.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "isoppp/error.hpp"
#include "isoppp/outage.hpp"

namespace isoppp {

namespace {

constexpr double kPi = std::numbers::pi;

double driving_value(const ShapeFunction& shape, double alpha, double y0_norm, double c,
                     double tol) {
  const IntegralResult a = interference_driving(shape, alpha, y0_norm, c, tol);
  if (!a.converged) fail(ErrorKind::NonConvergence, "driving function did not converge");
  return a.value;
}

void require_probability(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    std::ostringstream os;
    os << "outage constraint must lie in (0, 1), got " << epsilon;
    fail(ErrorKind::InvalidArgument, os.str());
  }
}

// pi Gamma(1 + 2/alpha) delta^(-2/alpha): area inhibited per unit density.
double inhibition_area(double alpha, double delta_sense) {
  if (!(alpha >= 2.0)) fail(ErrorKind::UnsupportedAlpha, "alpha must be >= 2");
  if (!(delta_sense > 0.0)) fail(ErrorKind::InvalidArgument, "sensing threshold must be positive");
  return kPi * std::tgamma(1.0 + 2.0 / alpha) * std::pow(delta_sense, -2.0 / alpha);
}

}  // namespace

double capacity_intensity(const ShapeFunction& shape, const ChannelModel& channel,
                          const LinkConfig& link, double epsilon, double tol) {
  require_probability(epsilon);
  validate(channel);
  if (channel.c != 0.0) fail(ErrorKind::RequiresZeroC, "transmission capacity needs c = 0");
  if (channel.fading.kind() != FadingKind::RayleighExponential)
    fail(ErrorKind::UnsupportedFading, "transmission capacity needs Rayleigh fading");
  if (link.eta_db) fail(ErrorKind::InvalidArgument, "transmission capacity assumes no noise");
  if (!(link.distance > 0.0 && link.beta > 0.0))
    fail(ErrorKind::InvalidArgument, "link distance and threshold must be positive");
  const double s = link.beta * std::pow(link.distance, channel.alpha);
  const double a = driving_value(shape, channel.alpha, link.y0_norm, s, tol);
  return -std::log1p(-epsilon) / (s * a);
}

double local_transmission_capacity(const ShapeFunction& shape, const ChannelModel& channel,
                                   const LinkConfig& link, double epsilon, double tol) {
  return capacity_intensity(shape, channel, link, epsilon, tol) * (1.0 - epsilon);
}

FhDsGain fh_ds_gain(const ShapeFunction& shape, double distance, double beta,
                    double processing_gain, double tol) {
  if (!(processing_gain >= 1.0)) fail(ErrorKind::InvalidArgument, "processing gain must be >= 1");
  if (!(distance > 0.0 && beta > 0.0))
    fail(ErrorKind::InvalidArgument, "link distance and threshold must be positive");
  if (!(shape.at_origin() > 0.0))
    fail(ErrorKind::InvalidArgument, "gain at the origin needs F(0) > 0");
  const double s = beta * distance * distance;
  const double spread = driving_value(shape, 2.0, 0.0, s, tol);
  const double hopped = driving_value(shape, 2.0, 0.0, s / processing_gain, tol);
  return {hopped / spread, 1.0 + kPi * shape.at_origin() * std::log(processing_gain) / spread};
}

double csma_large_scale_density(double lambda_potential, double alpha, double delta_sense) {
  if (!(lambda_potential > 0.0)) fail(ErrorKind::InvalidArgument, "density must be positive");
  const double area = inhibition_area(alpha, delta_sense);
  return -std::expm1(-lambda_potential * area) / area;
}

double csma_saturation_density(double alpha, double delta_sense) {
  return 1.0 / inhibition_area(alpha, delta_sense);
}

ShapeFunction csma_shape(double delta_sense, double alpha) {
  return carrier_sense_shape(delta_sense, alpha);
}

double csma_accuracy_loss(double lambda_potential, double alpha, double delta_sense,
                          double distance, double beta, double tol) {
  if (alpha != 4.0) fail(ErrorKind::UnsupportedAlpha, "carrier-sense study needs alpha = 4");
  const ShapeFunction shape = csma_shape(delta_sense, alpha);
  const ChannelModel channel{alpha, 0.0, FadingLaw::rayleigh()};
  LinkConfig link;
  link.lambda_scale = csma_large_scale_density(lambda_potential, alpha, delta_sense);
  link.distance = distance;
  link.beta = beta;

  link.y0_norm = 0.0;
  const double at_origin = outage_exact(shape, channel, link, tol);
  link.y0_norm = distance;
  const double at_offset = outage_exact(shape, channel, link, tol);
  if (at_offset <= 1e-15) {
    std::ostringstream os;
    os << "outage probability " << at_offset << " at the offset receiver is too small";
    fail(ErrorKind::DegenerateDenominator, os.str());
  }
  return std::abs(at_origin - at_offset) / at_offset;
}

}  // namespace isoppp

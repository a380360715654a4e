#include "isoppp/outage.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "isoppp/error.hpp"

namespace isoppp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegenerateOutage = 1e-15;

// -log(1 - P~_o): the stationary Rayleigh exponent with intensity lambda F(|y0|).
double approx_exponent(const ShapeFunction& shape, const ChannelModel& channel,
                       const LinkConfig& link) {
  const double alpha = channel.alpha;
  if (!(alpha > 2.0)) {
    fail(ErrorKind::UnsupportedAlpha,
         "the locally stationary approximation needs alpha > 2 (the stationary alpha = 2 "
         "interference is infinite)");
  }
  if (channel.c != 0.0)
    fail(ErrorKind::RequiresZeroC, "the locally stationary approximation needs c = 0");
  const double csc = 1.0 / std::sin(2.0 * kPi / alpha);
  return link.lambda_scale * shape(link.y0_norm) * link.distance * link.distance *
         std::pow(link.beta, 2.0 / alpha) * (2.0 * kPi * kPi / alpha) * csc;
}

void require_noise_free(const LinkConfig& link, const char* what) {
  if (link.eta_db) fail(ErrorKind::InvalidArgument, std::string(what) + " assumes a noise-free link");
}

}  // namespace

double outage_exact(const ShapeFunction& shape, const ChannelModel& channel,
                    const LinkConfig& link, double tol) {
  validate(channel);
  validate(link);
  const double s = link.beta * (channel.c + std::pow(link.distance, channel.alpha));
  const double log_success =
      log_laplace_transform(shape, channel, link.lambda_scale, link.y0_norm, s, tol) +
      std::log(link.noise_success());
  return -std::expm1(log_success);
}

double outage_approx(const ShapeFunction& shape, const ChannelModel& channel,
                     const LinkConfig& link) {
  validate(channel);
  validate(link);
  return -std::expm1(-approx_exponent(shape, channel, link));
}

double log_divergence(const ShapeFunction& shape, const ChannelModel& channel,
                      const LinkConfig& link, double tol) {
  validate(channel);
  validate(link);
  if (channel.alpha != 4.0) fail(ErrorKind::UnsupportedAlpha, "log-divergence needs alpha = 4");
  if (channel.c != 0.0) fail(ErrorKind::RequiresZeroC, "log-divergence needs c = 0");
  require_noise_free(link, "log-divergence");
  const double d = link.distance;
  const double d2 = d * d;
  const double s = link.beta * d2 * d2;
  const IntegralResult a4 = interference_driving_a4(shape, link.y0_norm, s, tol);
  if (!a4.converged) fail(ErrorKind::NonConvergence, "driving function did not converge");
  const double stationary = kPi * kPi * shape(link.y0_norm) / (2.0 * d2 * std::sqrt(link.beta));
  return s * (stationary - a4.value);
}

double log_divergence_from_outages(const ShapeFunction& shape, const ChannelModel& channel,
                                   const LinkConfig& link, double tol) {
  require_noise_free(link, "log-divergence");
  const double exact = outage_exact(shape, channel, link, tol);
  const double approx = outage_approx(shape, channel, link);
  return (std::log1p(-exact) - std::log1p(-approx)) / link.lambda_scale;
}

double relative_error(const ShapeFunction& shape, const ChannelModel& channel,
                      const LinkConfig& link, double tol) {
  const double exact = outage_exact(shape, channel, link, tol);
  if (exact <= kDegenerateOutage) {
    std::ostringstream os;
    os << "exact outage probability " << exact << " is too small for a relative error";
    fail(ErrorKind::DegenerateDenominator, os.str());
  }
  const double approx = outage_approx(shape, channel, link);
  return std::abs(approx - exact) / exact;
}

}  // namespace isoppp

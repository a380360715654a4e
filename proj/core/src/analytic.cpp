#include "isoppp/analytic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "isoppp/error.hpp"
#include "isoppp/numerics.hpp"

namespace isoppp {

namespace {

constexpr double kPi = std::numbers::pi;

void require_closed_form_alpha(double alpha) {
  if (alpha != 2.0 && alpha != 4.0) {
    std::ostringstream os;
    os << "closed forms exist only for alpha in {2, 4}, got " << alpha
       << "; use the Monte-Carlo engine or the tail bounds";
    fail(ErrorKind::UnsupportedAlpha, os.str());
  }
}

void require_positive(double value, const char* what) {
  if (!(value > 0.0)) {
    std::ostringstream os;
    os << what << " must be positive, got " << value;
    fail(ErrorKind::DomainError, os.str());
  }
}

std::vector<double> kernel_breaks(double y0_norm, double width) {
  std::vector<double> out;
  if (y0_norm > 0.0) {
    out.push_back(y0_norm);
    out.push_back(y0_norm + width);
    if (y0_norm > width) out.push_back(y0_norm - width);
  }
  out.push_back(width);
  return out;
}

IntegralResult scaled(IntegralResult r, double factor) {
  r.value *= factor;
  r.abs_error *= std::abs(factor);
  return r;
}

}  // namespace

std::string_view to_string(FadingKind kind) noexcept {
  switch (kind) {
    case FadingKind::UnitDeterministic: return "unit";
    case FadingKind::RayleighExponential: return "rayleigh";
    case FadingKind::Custom: return "custom";
  }
  return "?";
}

FadingLaw FadingLaw::rayleigh() {
  return FadingLaw(
      FadingKind::RayleighExponential,
      [](RandomEngine& rng) { return std::exponential_distribution<double>(1.0)(rng); },
      [](double x) { return x <= 0.0 ? 1.0 : std::exp(-x); });
}

FadingLaw FadingLaw::unit() {
  return FadingLaw(
      FadingKind::UnitDeterministic, [](RandomEngine&) { return 1.0; },
      [](double x) { return x <= 1.0 ? 1.0 : 0.0; });
}

FadingLaw FadingLaw::custom(Sampler sampler, Tail tail) {
  if (!sampler) fail(ErrorKind::InvalidArgument, "custom fading law needs a sampler");
  return FadingLaw(FadingKind::Custom, std::move(sampler), std::move(tail));
}

double FadingLaw::sample(RandomEngine& rng) const { return sampler_(rng); }

bool FadingLaw::has_tail() const noexcept { return static_cast<bool>(tail_); }

double FadingLaw::tail_probability(double x) const {
  if (!tail_) fail(ErrorKind::UnsupportedFading, "fading law has no tail distribution");
  return tail_(x);
}

double ChannelModel::path_loss(double distance) const {
  return 1.0 / (c + std::pow(distance, alpha));
}

double LinkConfig::noise_success() const {
  if (!eta_db) return 1.0;
  return std::exp(-beta / std::pow(10.0, *eta_db / 10.0));
}

void validate(const ChannelModel& channel) {
  if (!(channel.alpha >= 2.0) || !std::isfinite(channel.alpha))
    fail(ErrorKind::UnsupportedAlpha, "path-loss exponent must be >= 2");
  if (!(channel.c >= 0.0) || !std::isfinite(channel.c))
    fail(ErrorKind::DomainError, "path-loss constant c must be >= 0");
}

void validate(const LinkConfig& link) {
  if (!(link.lambda_scale > 0.0)) fail(ErrorKind::InvalidArgument, "lambda must be positive");
  if (!(link.distance > 0.0)) fail(ErrorKind::InvalidArgument, "link distance must be positive");
  if (!(link.beta > 0.0)) fail(ErrorKind::InvalidArgument, "SINR threshold must be positive");
  if (!(link.y0_norm >= 0.0)) fail(ErrorKind::InvalidArgument, "receiver offset must be >= 0");
}

std::string_view to_string(Tristate t) noexcept {
  switch (t) {
    case Tristate::Yes: return "yes";
    case Tristate::No: return "no";
    case Tristate::Unknown: return "unknown";
  }
  return "?";
}

IntegralResult interference_driving_a2(const ShapeFunction& shape, double y0_norm, double c,
                                       double tol) {
  require_positive(c, "path-loss constant c");
  if (!has_integrable_log_moment(shape.tail())) {
    fail(ErrorKind::DivergentIntegral,
         "alpha = 2 mean interference is infinite for a " + describe(shape.tail()) +
             " density; the interference is almost surely infinite");
  }
  // For shapes vanishing at infinity the boundary term F(0) K(0) folds into the
  // integral of f(r) (K(r) - K(0)).
  const auto breaks = kernel_breaks(y0_norm, std::sqrt(c));
  const IntegralResult inner = integrate_semi_infinite(
      [c, y0_norm](double r) { return asinh_kernel_increment(r, c, y0_norm); }, shape, tol,
      KernelGrowth::Logarithmic, breaks);
  return scaled(inner, -kPi);
}

IntegralResult interference_driving_a4(const ShapeFunction& shape, double y0_norm, double c,
                                       double tol) {
  require_positive(c, "path-loss constant c");
  const double prefactor = kPi / (2.0 * std::sqrt(c));
  const auto breaks = kernel_breaks(y0_norm, std::sqrt(std::sqrt(c)));
  if (shape.limit_at_infinity() == 0.0) {
    // pi F_inf - int f (Theta + pi/2) dr with F_inf = 0
    const IntegralResult inner = integrate_semi_infinite(
        [c, y0_norm](double r) { return arctan_kernel_rise(r, c, y0_norm); }, shape, tol,
        KernelGrowth::Bounded, breaks);
    return scaled(inner, -prefactor);
  }
  // pi F(0) + int f (pi/2 - Theta) dr
  IntegralResult inner = integrate_semi_infinite(
      [c, y0_norm](double r) { return arctan_kernel_deficit(r, c, y0_norm); }, shape, tol,
      KernelGrowth::Bounded, breaks);
  inner.value += kPi * shape.at_origin();
  return scaled(inner, prefactor);
}

IntegralResult interference_driving(const ShapeFunction& shape, double alpha, double y0_norm,
                                    double c, double tol) {
  require_closed_form_alpha(alpha);
  return alpha == 2.0 ? interference_driving_a2(shape, y0_norm, c, tol)
                      : interference_driving_a4(shape, y0_norm, c, tol);
}

IntegralResult mean_interference(const ShapeFunction& shape, const ChannelModel& channel,
                                 double lambda_scale, double y0_norm, double tol) {
  require_closed_form_alpha(channel.alpha);
  require_positive(lambda_scale, "intensity scale lambda");
  return scaled(interference_driving(shape, channel.alpha, y0_norm, channel.c, tol),
                lambda_scale);
}

double log_laplace_transform(const ShapeFunction& shape, const ChannelModel& channel,
                             double lambda_scale, double y0_norm, double s, double tol) {
  require_closed_form_alpha(channel.alpha);
  if (channel.fading.kind() != FadingKind::RayleighExponential)
    fail(ErrorKind::UnsupportedFading, "the closed-form Laplace transform needs Rayleigh fading");
  if (!(s >= 0.0)) fail(ErrorKind::InvalidArgument, "Laplace variable s must be >= 0");
  require_positive(lambda_scale, "intensity scale lambda");
  if (s == 0.0) return 0.0;
  if (channel.alpha == 2.0 && !has_integrable_log_moment(shape.tail()))
    return -std::numeric_limits<double>::infinity();
  const IntegralResult a =
      interference_driving(shape, channel.alpha, y0_norm, s + channel.c, tol);
  if (!a.converged) {
    std::ostringstream os;
    os << "driving function did not converge (estimate " << a.value << ", error " << a.abs_error
       << ")";
    fail(ErrorKind::NonConvergence, os.str());
  }
  return -lambda_scale * s * a.value;
}

double laplace_transform(const ShapeFunction& shape, const ChannelModel& channel,
                         double lambda_scale, double y0_norm, double s, double tol) {
  return std::exp(log_laplace_transform(shape, channel, lambda_scale, y0_norm, s, tol));
}

FinitenessVerdict classify_finiteness(const ShapeFunction& shape, const ChannelModel& channel) {
  if (!(channel.alpha >= 2.0)) fail(ErrorKind::UnsupportedAlpha, "alpha must be >= 2");
  FinitenessVerdict v;
  v.expected_count_finite = has_finite_node_count(shape.tail());
  if (channel.alpha == 2.0) {
    v.mean_interference_finite = has_integrable_log_moment(shape.tail());
    v.interference_as_finite = v.mean_interference_finite ? Tristate::Yes : Tristate::No;
  } else {
    v.mean_interference_finite = channel.c > 0.0;
    v.interference_as_finite = v.mean_interference_finite ? Tristate::Yes : Tristate::Unknown;
  }
  return v;
}

}  // namespace isoppp

#include "isoppp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "isoppp/error.hpp"

namespace isoppp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLaplacianFloor = -1e-12;
constexpr std::size_t kMaxGridPoints = 4'000'000;

double default_extent(const ShapeFunction& shape) {
  const double end = shape.support_end();
  if (std::isfinite(end)) return 1.25 * end;
  double last_knot = 0.0;
  for (double k : shape.knots()) last_knot = std::max(last_knot, k);
  return std::max(50.0 * shape.length_scale(), 2.0 * last_knot);
}

// F'' + F'/r from central differences of f; at r = 0 the Laplacian of a
// radial profile is 2 F''(0), estimated as 2 f(h) / h.
double radial_laplacian(const ShapeFunction& shape, double r, double h) {
  if (r == 0.0) return 2.0 * shape.derivative(h) / h;
  const double second = (shape.derivative(r + h) - shape.derivative(r - h)) / (2.0 * h);
  return second + shape.derivative(r) / r;
}

void require_positive_level(double z) {
  if (!(z > 0.0)) {
    std::ostringstream os;
    os << "interference level z must be positive, got " << z;
    fail(ErrorKind::InvalidArgument, os.str());
  }
}

}  // namespace

std::optional<RadialInterval> RadialRegion::containing(double y0_norm) const {
  for (const RadialInterval& iv : intervals) {
    const bool above = iv.low == 0.0 ? y0_norm >= 0.0 : y0_norm > iv.low;
    if (above && y0_norm < iv.high) return iv;
  }
  return std::nullopt;
}

RadialRegion subharmonic_region(const ShapeFunction& shape, double grid_step, double extent) {
  if (!(grid_step > 0.0)) fail(ErrorKind::InvalidArgument, "grid step must be positive");
  if (!(extent > 0.0)) extent = default_extent(shape);
  const double count = std::ceil(extent / grid_step);
  if (count + 1.0 > static_cast<double>(kMaxGridPoints))
    fail(ErrorKind::InvalidArgument, "subharmonic grid too fine for the requested extent");
  const auto last = static_cast<std::size_t>(count);

  auto near_knot = [&](double r) {
    for (double k : shape.knots())
      if (std::abs(r - k) <= grid_step * (1.0 + 1e-9)) return true;
    return false;
  };
  auto qualifies = [&](std::size_t i) {
    const double r = static_cast<double>(i) * grid_step;
    return !near_knot(r) && radial_laplacian(shape, r, grid_step) >= kLaplacianFloor;
  };

  RadialRegion region;
  std::size_t i = 0;
  while (i <= last) {
    if (!qualifies(i)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 <= last && qualifies(j + 1)) ++j;
    const double low = i == 0 ? 0.0 : static_cast<double>(i) * grid_step;
    const double high = j == last ? kInf : static_cast<double>(j) * grid_step;
    if (high > low) region.intervals.push_back({low, high});
    i = j + 1;
  }
  return region;
}

RadialRegion subharmonic_region(const ShapeFunction& shape) {
  return subharmonic_region(shape, shape.length_scale() / 200.0);
}

double max_inscribed_radius(const RadialRegion& region, double y0_norm) {
  const auto iv = region.containing(y0_norm);
  if (!iv) {
    std::ostringstream os;
    os << "receiver offset " << y0_norm << " is not interior to the subharmonic region";
    fail(ErrorKind::OutsideRegion, os.str());
  }
  if (iv->low == 0.0) return iv->high - y0_norm;
  return std::min(y0_norm - iv->low, iv->high - y0_norm);
}

double lower_tail_bound(const ShapeFunction& shape, const ChannelModel& channel,
                        double lambda_scale, double y0_norm, double z, double tol) {
  return lower_tail_bound(shape, subharmonic_region(shape), channel, lambda_scale, y0_norm, z,
                          tol);
}

double lower_tail_bound(const ShapeFunction& shape, const RadialRegion& region,
                        const ChannelModel& channel, double lambda_scale, double y0_norm,
                        double z, double tol) {
  validate(channel);
  require_positive_level(z);
  if (!(lambda_scale > 0.0)) fail(ErrorKind::InvalidArgument, "lambda must be positive");
  const double rbar = max_inscribed_radius(region, y0_norm);
  const double level = shape(y0_norm);
  const double alpha = channel.alpha;
  const double c = channel.c;

  if (channel.fading.kind() == FadingKind::UnitDeterministic) {
    if (z * c >= 1.0) return 0.0;
    const double reach2 = std::pow(1.0 / z - c, 2.0 / alpha);
    return -std::expm1(-std::numbers::pi * lambda_scale * level * std::min(rbar * rbar, reach2));
  }
  if (!channel.fading.has_tail())
    fail(ErrorKind::UnsupportedFading, "lower bound needs the fading tail distribution");
  if (level == 0.0) return 0.0;

  // Past this radius a single unit-gain interferer no longer reaches z.
  const double reach = z * c < 1.0 ? std::pow(1.0 / z - c, 1.0 / alpha) : std::pow(1.0 / z, 1.0 / alpha);
  const FadingLaw& fading = channel.fading;
  auto integrand = [&fading, z, c, alpha](double r) {
    return r * fading.tail_probability(z * (c + std::pow(r, alpha)));
  };
  std::vector<double> breaks{0.0};
  if (reach < rbar) breaks.push_back(reach);
  breaks.push_back(rbar);
  const IntegralResult inner = integrate_panels(integrand, breaks, tol, reach);
  if (!inner.converged) fail(ErrorKind::NonConvergence, "lower-bound integral did not converge");
  return -std::expm1(-2.0 * std::numbers::pi * lambda_scale * level * inner.value);
}

double markov_upper_tail(const ShapeFunction& shape, const ChannelModel& channel,
                         double lambda_scale, double y0_norm, double z, double tol) {
  validate(channel);
  require_positive_level(z);
  const IntegralResult mean = mean_interference(shape, channel, lambda_scale, y0_norm, tol);
  if (!mean.converged) fail(ErrorKind::NonConvergence, "mean interference did not converge");
  return std::min(1.0, mean.value / z);
}

}  // namespace isoppp

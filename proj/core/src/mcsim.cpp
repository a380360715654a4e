#include "isoppp/mcsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>
#include <thread>

// Boost 1.74 pchip.hpp calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include "isoppp/error.hpp"
#include "isoppp/numerics.hpp"
#include "isoppp/quadrature.hpp"

namespace isoppp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kZ95 = 1.959963984540054;
constexpr std::size_t kInitialKnots = 10'000;
constexpr int kMaxRefinements = 4;
constexpr double kTableMassTol = 1e-6;
constexpr double kMaxTruncationRadius = 1e15;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Panel breaks on [a, b] from the shape knots plus extras; b may be +inf, in
// which case a knee panel is inserted first.
std::vector<double> radial_breaks(const ShapeFunction& shape, double a, double b,
                                  std::initializer_list<double> extras) {
  b = std::min(b, shape.support_end());
  std::vector<double> out{a};
  auto add = [&](double r) {
    if (r > a && r < b && std::isfinite(r)) out.push_back(r);
  };
  for (double k : shape.knots()) add(k);
  for (double k : extras) add(k);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (!std::isfinite(b)) add(std::max(8.0 * shape.length_scale(), 2.0 * out.back()));
  std::sort(out.begin(), out.end());
  out.push_back(b);
  return out;
}

double tail_scale_for(const std::vector<double>& breaks, const ShapeFunction& shape) {
  return breaks.size() >= 2 ? std::max(breaks[breaks.size() - 2], shape.length_scale())
                            : shape.length_scale();
}

double path_loss_sq(double dist2, double alpha, double c) {
  if (alpha == 2.0) return 1.0 / (c + dist2);
  if (alpha == 4.0) return 1.0 / (c + dist2 * dist2);
  return 1.0 / (c + std::pow(dist2, 0.5 * alpha));
}

Estimate make_estimate(double value, double variance, std::size_t n) {
  const double se = std::sqrt(variance / static_cast<double>(n));
  return {value, se, kZ95 * se};
}

// Mean and sample variance of a sequence reduced in index order.
template <class Fn>
Estimate sample_estimate(std::size_t n, Fn&& value_at) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += value_at(i);
  const double mean = sum / static_cast<double>(n);
  if (n < 2 || !std::isfinite(mean)) return {mean, 0.0, 0.0};
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = value_at(i) - mean;
    ss += d * d;
  }
  return make_estimate(mean, ss / static_cast<double>(n - 1), n);
}

Estimate frequency_estimate(std::size_t hits, std::size_t n) {
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  return make_estimate(p, p * (1.0 - p), n);
}

}  // namespace

void validate(const SimConfig& config) {
  if (config.trials < 1) fail(ErrorKind::InvalidArgument, "trials must be >= 1");
  if (!(config.truncation_tol_fraction > 0.0 && config.truncation_tol_fraction < 1.0))
    fail(ErrorKind::InvalidArgument, "truncation tolerance fraction must lie in (0, 1)");
  if (config.max_radius_override && !(*config.max_radius_override > 0.0))
    fail(ErrorKind::InvalidArgument, "maximum radius override must be positive");
}

double neglected_mean_bound(const ShapeFunction& shape, const ChannelModel& channel,
                            double lambda_scale, double y0_norm, double radius, double tol) {
  validate(channel);
  if (radius >= shape.support_end()) return 0.0;
  const double alpha = channel.alpha;
  const double c = channel.c;
  if (alpha == 2.0 && !has_integrable_log_moment(shape.tail())) return kInf;
  if (c == 0.0 && radius <= y0_norm) return kInf;
  auto integrand = [&shape, alpha, c, y0_norm](double r) {
    const double gap = std::max(0.0, r - y0_norm);
    const double f = shape(r);
    if (f == 0.0) return 0.0;
    return r * f / (c + std::pow(gap, alpha));
  };
  const auto breaks = radial_breaks(shape, radius, kInf, {y0_norm});
  const IntegralResult res = integrate_panels(integrand, breaks, tol, tail_scale_for(breaks, shape));
  return 2.0 * kPi * lambda_scale * (res.value + res.abs_error);
}

double truncated_mean(const ShapeFunction& shape, const ChannelModel& channel,
                      double lambda_scale, double y0_norm, double radius, double tol) {
  validate(channel);
  if (!(channel.c > 0.0)) fail(ErrorKind::DomainError, "truncated mean needs c > 0");
  const double alpha = channel.alpha;
  const double c = channel.c;
  // Average of the path loss over the circle of radius r.
  auto ring_average = [alpha, c, y0_norm, tol](double r) {
    const double a = c + r * r + y0_norm * y0_norm;
    const double b = -2.0 * r * y0_norm;
    if (alpha == 2.0) return angular_closed_form(a, b) / kPi;
    auto inner = [=](double phi) {
      return path_loss_sq(r * r + y0_norm * y0_norm - 2.0 * r * y0_norm * std::cos(phi), alpha, c);
    };
    return integrate(inner, 0.0, kPi, tol).value / kPi;
  };
  auto integrand = [&shape, &ring_average](double r) {
    const double f = shape(r);
    if (f == 0.0) return 0.0;
    return r * f * ring_average(r);
  };
  const double width = std::pow(c, 1.0 / alpha);
  const auto breaks =
      radial_breaks(shape, 0.0, radius, {y0_norm, y0_norm - width, y0_norm + width});
  const IntegralResult res = integrate_panels(integrand, breaks, tol, tail_scale_for(breaks, shape));
  if (!res.converged) fail(ErrorKind::NonConvergence, "truncated mean did not converge");
  return 2.0 * kPi * lambda_scale * res.value;
}

double expected_count(const ShapeFunction& shape, double lambda_scale, double radius, double tol) {
  if (!(radius >= 0.0)) fail(ErrorKind::InvalidArgument, "radius must be >= 0");
  if (!std::isfinite(radius) && !has_finite_node_count(shape.tail())) return kInf;
  if (radius == 0.0) return 0.0;
  const auto breaks = radial_breaks(shape, 0.0, radius, {});
  const IntegralResult res = integrate_panels([&shape](double r) { return r * shape(r); }, breaks,
                                              tol, tail_scale_for(breaks, shape));
  return 2.0 * kPi * lambda_scale * res.value;
}

Truncation truncation_radius(const ShapeFunction& shape, const ChannelModel& channel,
                             double lambda_scale, double y0_norm, double tol_fraction) {
  validate(channel);
  if (!(lambda_scale > 0.0)) fail(ErrorKind::InvalidArgument, "lambda must be positive");
  if (!(tol_fraction > 0.0 && tol_fraction < 1.0))
    fail(ErrorKind::InvalidArgument, "truncation tolerance fraction must lie in (0, 1)");
  const bool closed_form = channel.alpha == 2.0 || channel.alpha == 4.0;
  if (channel.alpha == 2.0 && !has_integrable_log_moment(shape.tail())) {
    fail(ErrorKind::NoFiniteTruncation,
         "alpha = 2 with a " + describe(shape.tail()) +
             " density: the interference is almost surely infinite, no radius captures it");
  }
  if (channel.c == 0.0) {
    fail(ErrorKind::NoFiniteTruncation,
         "the mean interference is infinite for c = 0; give an explicit maximum radius");
  }
  const double reference =
      closed_form ? mean_interference(shape, channel, lambda_scale, y0_norm).value
                  : truncated_mean(shape, channel, lambda_scale, y0_norm, kInf);
  if (std::isfinite(shape.support_end())) return {shape.support_end(), 0.0, reference};

  double last_knot = 0.0;
  for (double k : shape.knots()) last_knot = std::max(last_knot, k);
  const double start = std::max({2.0 * y0_norm, shape.length_scale(), last_knot});
  const double step = std::pow(2.0, 0.25);
  for (double radius = start; radius <= kMaxTruncationRadius; radius *= step) {
    const double bound = neglected_mean_bound(shape, channel, lambda_scale, y0_norm, radius);
    if (bound <= tol_fraction * reference) return {radius, bound, reference};
  }
  fail(ErrorKind::NoFiniteTruncation, "no truncation radius meets the requested tolerance");
}

struct PointProcessSampler::Table {
  boost::math::interpolators::pchip<std::vector<double>> inverse;
  std::size_t size;
};

namespace {

// Knots mixing a uniform grid with a geometric one that resolves the origin.
std::vector<double> table_knots(const ShapeFunction& shape, double radius, std::size_t n) {
  std::vector<double> knots;
  knots.reserve(n + shape.knots().size() + 2);
  const std::size_t half = n / 2;
  for (std::size_t i = 0; i <= half; ++i)
    knots.push_back(radius * static_cast<double>(i) / static_cast<double>(half));
  const double lo = radius * 1e-6;
  for (std::size_t i = 0; i < half; ++i)
    knots.push_back(lo * std::pow(radius / lo, static_cast<double>(i) / static_cast<double>(half)));
  for (double k : shape.knots())
    if (k > 0.0 && k < radius) knots.push_back(k);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  return knots;
}

double ring_mass(const ShapeFunction& shape, double a, double b) {
  return integrate([&shape](double r) { return r * shape(r); }, a, b, 1e-14).value;
}

}  // namespace

PointProcessSampler::PointProcessSampler(const ShapeFunction& shape, double lambda_scale,
                                         double max_radius) {
  if (!(max_radius > 0.0) || !std::isfinite(max_radius))
    fail(ErrorKind::InvalidArgument, "sampling radius must be positive and finite");
  if (!(lambda_scale > 0.0)) fail(ErrorKind::InvalidArgument, "lambda must be positive");
  max_radius_ = max_radius;
  const double radius = std::min(max_radius, shape.support_end());

  std::size_t n = kInitialKnots;
  for (int attempt = 0;; ++attempt, n *= 2) {
    const std::vector<double> knots = table_knots(shape, radius, n);
    std::vector<double> mass(knots.size(), 0.0);
    for (std::size_t i = 1; i < knots.size(); ++i)
      mass[i] = mass[i - 1] + ring_mass(shape, knots[i - 1], knots[i]);
    const double total = mass.back();
    expected_count_ = 2.0 * kPi * lambda_scale * total;
    if (!(total > 0.0)) {
      table_.reset();
      return;
    }
    std::vector<double> x, y;
    x.reserve(knots.size());
    y.reserve(knots.size());
    for (std::size_t i = 0; i < knots.size(); ++i) {
      const double u = mass[i] / total;
      if (!x.empty() && u <= x.back()) continue;
      x.push_back(u);
      y.push_back(knots[i]);
    }
    x.back() = 1.0;
    y.back() = radius;
    if (x.size() < 4) fail(ErrorKind::DomainError, "sampling density too concentrated");
    const std::vector<double> xs = x, ys = y;
    auto table = std::make_shared<Table>(
        Table{boost::math::interpolators::pchip<std::vector<double>>(std::move(x), std::move(y)),
              xs.size()});

    // Mass check at the interpolated mid-mass radius of every cell.
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      const double target = 0.5 * (xs[i] + xs[i + 1]);
      const double r = std::clamp(table->inverse(target), ys[i], ys[i + 1]);
      const double got = xs[i] + ring_mass(shape, ys[i], r) / total;
      worst = std::max(worst, std::abs(got - target));
    }
    table_ = std::move(table);
    if (worst <= kTableMassTol || attempt == kMaxRefinements) return;
  }
}

std::size_t PointProcessSampler::table_size() const noexcept { return table_ ? table_->size : 0; }

double PointProcessSampler::quantile(double u) const {
  if (!table_) return 0.0;
  return std::clamp(table_->inverse(std::clamp(u, 0.0, 1.0)), 0.0, max_radius_);
}

double PointProcessSampler::sample_radius(RandomEngine& rng) const {
  return quantile(std::uniform_real_distribution<double>(0.0, 1.0)(rng));
}

std::vector<PolarPoint> PointProcessSampler::sample(RandomEngine& rng) const {
  std::vector<PolarPoint> out;
  if (expected_count_ <= 0.0) return out;
  const auto n = std::poisson_distribution<std::uint64_t>(expected_count_)(rng);
  out.reserve(n);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double r = sample_radius(rng);
    out.push_back({r, angle(rng)});
  }
  return out;
}

std::vector<PolarPoint> sample_point_process(const ShapeFunction& shape, double lambda_scale,
                                             double max_radius, RandomEngine& rng) {
  return PointProcessSampler(shape, lambda_scale, max_radius).sample(rng);
}

RandomEngine trial_engine(std::uint64_t seed, std::uint64_t index) {
  return RandomEngine(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL)));
}

SimOutcome simulate(const ShapeFunction& shape, const ChannelModel& channel,
                    const LinkConfig& link, const SimRequest& request, const SimConfig& config) {
  validate(config);
  validate(channel);
  validate(link);

  SimOutcome out;
  if (config.max_radius_override) {
    out.truncation_radius = *config.max_radius_override;
    out.truncation_bias_bound = neglected_mean_bound(shape, channel, link.lambda_scale,
                                                     link.y0_norm, out.truncation_radius);
  } else {
    const Truncation t = truncation_radius(shape, channel, link.lambda_scale, link.y0_norm,
                                           config.truncation_tol_fraction);
    out.truncation_radius = t.radius;
    out.truncation_bias_bound = t.bias_bound;
  }
  const PointProcessSampler sampler(shape, link.lambda_scale, out.truncation_radius);

  const std::size_t n = config.trials;
  std::vector<double> interference(n);
  std::vector<std::uint32_t> counts(n);
  std::vector<std::uint8_t> outages(request.outage ? n : 0);

  const double alpha = channel.alpha;
  const double c = channel.c;
  const double y0 = link.y0_norm;
  const double inv_signal = c + std::pow(link.distance, alpha);
  const double noise = link.eta_db ? std::pow(10.0, -*link.eta_db / 10.0) : 0.0;

  auto run_trial = [&](std::size_t i) {
    RandomEngine rng = trial_engine(config.seed, i);
    const auto points = sampler.sample(rng);
    double sum = 0.0;
    for (const PolarPoint& p : points) {
      const double dist2 = p.radius * p.radius + y0 * y0 - 2.0 * p.radius * y0 * std::cos(p.angle);
      sum += channel.fading.sample(rng) * path_loss_sq(std::max(dist2, 0.0), alpha, c);
    }
    interference[i] = sum;
    counts[i] = static_cast<std::uint32_t>(points.size());
    if (request.outage) {
      const double g0 = channel.fading.sample(rng);
      outages[i] = g0 < link.beta * (noise + inv_signal * sum) ? 1 : 0;
    }
  };

  unsigned workers = config.workers ? config.workers : std::thread::hardware_concurrency();
  workers = static_cast<unsigned>(std::clamp<std::size_t>(workers, 1, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) run_trial(i);
  } else {
    std::vector<std::jthread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t lo = n * w / workers;
      const std::size_t hi = n * (w + 1) / workers;
      pool.emplace_back([&, w, lo, hi] {
        try {
          for (std::size_t i = lo; i < hi; ++i) run_trial(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    pool.clear();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  out.trials_used = n;
  out.mean = sample_estimate(n, [&](std::size_t i) { return interference[i]; });
  double count_sum = 0.0;
  for (std::uint32_t k : counts) count_sum += k;
  out.mean_point_count = count_sum / static_cast<double>(n);

  for (double z : request.tail_levels) {
    const auto hits = static_cast<std::size_t>(
        std::count_if(interference.begin(), interference.end(), [z](double v) { return v >= z; }));
    out.tail.emplace_back(z, frequency_estimate(hits, n));
  }
  if (request.outage) {
    const auto hits = static_cast<std::size_t>(std::count(outages.begin(), outages.end(), 1));
    out.outage = frequency_estimate(hits, n);
  }
  for (double s : request.laplace_points) {
    out.laplace.emplace_back(
        s, sample_estimate(n, [&](std::size_t i) { return std::exp(-s * interference[i]); }));
  }
  return out;
}

}  // namespace isoppp

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "isoppp/analytic.hpp"
#include "isoppp/shapes.hpp"

namespace isoppp {

struct SimConfig {
  std::size_t trials = 100'000;
  std::uint64_t seed = 1;
  /// Neglected mean interference allowed, as a fraction of the mean.
  double truncation_tol_fraction = 1e-3;
  std::optional<double> max_radius_override;
  /// Worker threads; 0 uses the hardware concurrency. Results do not depend on it.
  unsigned workers = 0;
};

void validate(const SimConfig& config);

/// What simulate() estimates besides the mean interference.
struct SimRequest {
  std::vector<double> tail_levels;    ///< z values for P(I >= z)
  bool outage = false;                ///< P(SINR < beta)
  std::vector<double> laplace_points; ///< s values for E[exp(-s I)]
};

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  double half_width95 = 0.0;

  bool operator==(const Estimate&) const = default;
};

struct SimOutcome {
  Estimate mean;
  std::vector<std::pair<double, Estimate>> tail;
  std::optional<Estimate> outage;
  std::vector<std::pair<double, Estimate>> laplace;
  double truncation_radius = 0.0;
  /// Upper bound on the mean of the interference from beyond truncation_radius.
  /// The Laplace estimates are biased by at most s times this value, the
  /// Rayleigh outage by at most beta (c + d^alpha) times it.
  double truncation_bias_bound = 0.0;
  std::size_t trials_used = 0;
  double mean_point_count = 0.0;

  bool operator==(const SimOutcome&) const = default;
};

struct Truncation {
  double radius;
  double bias_bound;      ///< neglected mean interference
  double reference_mean;  ///< mean the tolerance was measured against
};

/// 2 pi lambda int_R^inf r F(r) / (c + (r - y0)^alpha) dr for R > y0: an upper
/// bound on the mean interference from nodes beyond R.
double neglected_mean_bound(const ShapeFunction& shape, const ChannelModel& channel,
                            double lambda_scale, double y0_norm, double radius,
                            double tol = 1e-10);

/// E[I(y0)] restricted to nodes within `radius` of the origin, by quadrature
/// of the angle-averaged path loss.
double truncated_mean(const ShapeFunction& shape, const ChannelModel& channel,
                      double lambda_scale, double y0_norm, double radius, double tol = 1e-10);

/// 2 pi lambda int_0^R r F(r) dr.
double expected_count(const ShapeFunction& shape, double lambda_scale, double radius,
                      double tol = 1e-10);

/// Smallest radius on a geometric grid whose neglected-mean bound is within
/// tol_fraction of the mean. The support end for compactly supported shapes.
/// Throws NoFiniteTruncation when the mean is infinite.
Truncation truncation_radius(const ShapeFunction& shape, const ChannelModel& channel,
                             double lambda_scale, double y0_norm, double tol_fraction);

struct PolarPoint {
  double radius;
  double angle;
};

/// Samples the PPP with intensity lambda F(|x|) restricted to a disc. Radii
/// come from an inverse-CDF table of r F(r) with monotone cubic interpolation.
class PointProcessSampler {
 public:
  PointProcessSampler(const ShapeFunction& shape, double lambda_scale, double max_radius);

  double expected_count() const noexcept { return expected_count_; }
  double max_radius() const noexcept { return max_radius_; }
  std::size_t table_size() const noexcept;

  /// Radius with density proportional to r F(r) on [0, max_radius].
  double sample_radius(RandomEngine& rng) const;
  std::vector<PolarPoint> sample(RandomEngine& rng) const;

  /// Inverse CDF: radius below which a fraction u of the mass lies.
  double quantile(double u) const;

 private:
  struct Table;
  std::shared_ptr<const Table> table_;
  double expected_count_;
  double max_radius_;
};

std::vector<PolarPoint> sample_point_process(const ShapeFunction& shape, double lambda_scale,
                                             double max_radius, RandomEngine& rng);

/// Engine for trial `index` of a run seeded with `seed`; independent of scheduling.
RandomEngine trial_engine(std::uint64_t seed, std::uint64_t index);

/// Monte-Carlo estimates of the interference at distance link.y0_norm from
/// the origin. Bit-for-bit reproducible for fixed seed, trials and inputs.
SimOutcome simulate(const ShapeFunction& shape, const ChannelModel& channel,
                    const LinkConfig& link, const SimRequest& request, const SimConfig& config);

}  // namespace isoppp

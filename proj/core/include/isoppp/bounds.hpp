#pragma once

#include <optional>
#include <vector>

#include "isoppp/analytic.hpp"
#include "isoppp/shapes.hpp"

namespace isoppp {

struct RadialInterval {
  double low;
  double high;  ///< may be +inf

  bool operator==(const RadialInterval&) const = default;
};

/// Ordered, disjoint radial intervals. An interval starting at 0 is a disc,
/// any other interval an annulus.
struct RadialRegion {
  std::vector<RadialInterval> intervals;

  /// Interval containing y0_norm in its interior (a disc also contains its centre).
  std::optional<RadialInterval> containing(double y0_norm) const;
};

/// Radii where the radial Laplacian F'' + F'/r is >= -1e-12. F'' comes from
/// central differences of the analytic derivative with step `grid_step`;
/// grid points within one step of a knot are dropped. The grid covers
/// [0, extent]; a qualifying last point extends its interval to infinity.
/// extent <= 0 picks a default from the support end or length scale.
RadialRegion subharmonic_region(const ShapeFunction& shape, double grid_step, double extent = 0.0);

/// subharmonic_region with grid_step = length_scale / 200.
RadialRegion subharmonic_region(const ShapeFunction& shape);

/// Radius of the largest disc centred at distance y0_norm from the origin that
/// fits inside the region; +inf for an unbounded disc. Throws OutsideRegion.
double max_inscribed_radius(const RadialRegion& region, double y0_norm);

/// Dominant-interferer lower bound on P(I(y0) >= z):
///   1 - exp(-2 pi lambda F(|y0|) int_0^rbar r P(g >= z (c + r^alpha)) dr)
/// where rbar is the inscribed radius of the subharmonic region around y0.
/// Unit fading uses the closed form; other laws integrate their tail.
double lower_tail_bound(const ShapeFunction& shape, const ChannelModel& channel,
                        double lambda_scale, double y0_norm, double z, double tol = 1e-10);

/// Same, with a precomputed subharmonic region.
double lower_tail_bound(const ShapeFunction& shape, const RadialRegion& region,
                        const ChannelModel& channel, double lambda_scale, double y0_norm,
                        double z, double tol = 1e-10);

/// Markov bound min(1, lambda A_alpha(y0, c) / z). alpha in {2, 4}.
double markov_upper_tail(const ShapeFunction& shape, const ChannelModel& channel,
                         double lambda_scale, double y0_norm, double z, double tol = 1e-10);

}  // namespace isoppp

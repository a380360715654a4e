#pragma once

#include "isoppp/analytic.hpp"
#include "isoppp/shapes.hpp"

namespace isoppp {

/// Exact Rayleigh outage probability P(SINR(y0) < beta) at link.y0_norm:
/// 1 - L_I(beta (c + d^alpha)) exp(-beta / eta).
double outage_exact(const ShapeFunction& shape, const ChannelModel& channel,
                    const LinkConfig& link, double tol = 1e-10);

/// Locally stationary approximation: the interferers are replaced by a
/// stationary PPP of intensity lambda F(|y0|). Requires c = 0 and alpha > 2.
double outage_approx(const ShapeFunction& shape, const ChannelModel& channel,
                     const LinkConfig& link);

/// Log-divergence between exact and approximate success probabilities for
/// alpha = 4, c = 0, noise-free links, in closed form:
///   d^4 beta (pi^2 F(|y0|) / (2 d^2 sqrt(beta)) - A4(y0, beta d^4)).
/// Positive values mean the approximation overestimates the outage. Does not
/// depend on lambda.
double log_divergence(const ShapeFunction& shape, const ChannelModel& channel,
                      const LinkConfig& link, double tol = 1e-10);

/// The same quantity by its definition, lambda^-1 log((1 - P_o) / (1 - P~_o)),
/// evaluated from outage_exact and outage_approx.
double log_divergence_from_outages(const ShapeFunction& shape, const ChannelModel& channel,
                                   const LinkConfig& link, double tol = 1e-10);

/// |P~_o - P_o| / P_o; DegenerateDenominator when P_o <= 1e-15.
double relative_error(const ShapeFunction& shape, const ChannelModel& channel,
                      const LinkConfig& link, double tol = 1e-10);

}  // namespace isoppp

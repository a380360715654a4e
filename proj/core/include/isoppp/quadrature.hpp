#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace isoppp {

struct IntegralResult {
  double value = 0.0;
  double abs_error = 0.0;  ///< estimated, always >= 0
  bool converged = false;  ///< abs_error <= max(tol, tol * |value|)
  std::size_t evaluations = 0;
};

using RealFunction = std::function<double(double)>;

inline constexpr std::size_t kDefaultMaxEvaluations = 1'000'000;

/// Globally adaptive 7/15-point Gauss-Kronrod integration (Boost.Math rule) of `f` over the
/// consecutive panels [breaks[i], breaks[i+1]]. The last break may be +inf, in
/// which case that panel is mapped onto (0, 1] with u = 1 / (1 + (r - a) / scale).
///
/// Tolerance is mixed absolute/relative: the run stops once the summed error
/// estimate drops below max(tol, tol * |value|). Throws DomainError when the
/// integrand produces NaN.
IntegralResult integrate_panels(const RealFunction& f, std::span<const double> breaks, double tol,
                                double tail_scale = 1.0,
                                std::size_t max_evaluations = kDefaultMaxEvaluations);

IntegralResult integrate(const RealFunction& f, double a, double b, double tol,
                         std::size_t max_evaluations = kDefaultMaxEvaluations);

}  // namespace isoppp

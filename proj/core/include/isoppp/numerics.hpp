#pragma once

#include <complex>
#include <span>

#include "isoppp/quadrature.hpp"
#include "isoppp/shapes.hpp"

namespace isoppp {

/// Receiver offsets at or below this value use the origin (logarithmic) form
/// of the alpha = 2 kernel.
double origin_threshold(double c) noexcept;

/// Closed form of  int_0^pi dphi / (a + b cos(phi)) = pi / sqrt(a^2 - b^2).
/// Throws DomainError unless a > |b|.
double angular_closed_form(double a, double b);

/// asinh((r^2 + c - y0^2) / (2 y0 sqrt(c))), or log(r^2 + y0^2 + c) when y0 is
/// within origin_threshold(c) of the origin.
double asinh_kernel(double r, double c, double y0_norm);

/// asinh_kernel shifted by log(y0 sqrt(c)) so that it is continuous in y0 all
/// the way down to the origin, where it coincides with the logarithmic form.
/// Shifting by an r-independent constant leaves the alpha = 2 driving
/// function unchanged for shapes that vanish at infinity.
double regularized_asinh_kernel(double r, double c, double y0_norm);

/// regularized_asinh_kernel(r) - regularized_asinh_kernel(0), evaluated without
/// cancellation. Nonnegative and nondecreasing in r; equals
/// int_0^r 2t / sqrt((c + t^2 + y0^2)^2 - 4 t^2 y0^2) dt.
double asinh_kernel_increment(double r, double c, double y0_norm);

/// kappa(r, c, y0) = (r^2 - y0^2 - j sqrt(c)) / sqrt((sqrt(c) + j(r^2 + y0^2))^2 + 4 r^2 y0^2)
/// with the principal square root.
std::complex<double> kappa(double r, double c, double y0_norm);

/// Angle kernel of the alpha = 4 driving function, in [-pi/2, pi/2]:
/// atan(2 Re kappa / (1 - |kappa|^2)), continued continuously through the
/// points where |kappa| = 1 (r = 0 or y0 = 0). Nondecreasing in r, -pi/2 at
/// r = 0 and +pi/2 as r -> inf, and
///   d/dr [pi / (2 sqrt(c)) * arctan_kernel(r)]
///     = int_0^pi 2r / (c + (r^2 + y0^2 - 2 r y0 cos(phi))^2) dphi.
double arctan_kernel(double r, double c, double y0_norm);

/// arctan_kernel + pi/2, accurate near r = 0.
double arctan_kernel_rise(double r, double c, double y0_norm);

/// pi/2 - arctan_kernel, accurate as r -> inf.
double arctan_kernel_deficit(double r, double c, double y0_norm);

enum class KernelGrowth { Bounded, Logarithmic };

/// int_0^inf kernel(r) * weight.derivative(r) dr.
///
/// Shape knots, the compact-support end, and `extra_breaks` become panel
/// boundaries; beyond a knee radius the tail is mapped onto a finite interval.
/// Throws DivergentIntegral when a logarithmically growing kernel meets a
/// weight whose tail does not decay at least like a power law.
IntegralResult integrate_semi_infinite(const RealFunction& kernel, const ShapeFunction& weight,
                                       double tol, KernelGrowth growth = KernelGrowth::Bounded,
                                       std::span<const double> extra_breaks = {});

}  // namespace isoppp

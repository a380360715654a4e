#include "isoppp/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "isoppp/error.hpp"

namespace isoppp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

void require_positive_c(double c) {
  if (!(c > 0.0)) {
    std::ostringstream os;
    os << "path-loss constant c must be positive, got " << c;
    fail(ErrorKind::DomainError, os.str());
  }
}

// u + sqrt(u^2 + b) for b >= 0, without cancellation when u < 0.
struct ShiftedRoot {
  double root;  // sqrt(u^2 + b)
  double sum;   // u + root
};

ShiftedRoot shifted_root(double u, double sqrt_b) {
  const double root = std::hypot(u, sqrt_b);
  const double sum = u >= 0.0 ? u + root : (sqrt_b * sqrt_b) / (root - u);
  return {root, sum};
}

// Z = S + q + j sqrt(c) with S = principal sqrt(q^2 - c + 2j sqrt(c) p),
// p = t^2 + y^2, q = t^2 - y^2. Re Z >= 0 and Im Z > 0 throughout, so the
// alpha = 4 kernel is pi/2 - 2 arg(Z) with no branch ambiguity.
struct UpperHalfPoint {
  double re;
  double im;
};

UpperHalfPoint kernel_point(double t, double c, double y) {
  const double a = std::sqrt(c);
  const double t2 = t * t;
  const double y2 = y * y;
  const double p = t2 + y2;
  const double q = t2 - y2;
  if (p == 0.0) return {0.0, 2.0 * a};
  const double d = q * q - c;  // Re(S^2)
  const double mod = std::hypot(d, 2.0 * a * p);
  const double x2 = d >= 0.0 ? 0.5 * (d + mod) : 2.0 * c * p * p / (mod - d);
  const double x = std::sqrt(x2);
  const double y_s = a * p / x;
  double re;
  if (q >= 0.0) {
    re = x + q;
  } else {
    // x^2 - q^2 = 8 c t^2 y^2 / (|S^2| + q^2 + c)
    const double diff = 8.0 * c * t2 * y2 / (mod + q * q + c);
    re = diff / (x - q);
  }
  return {re, y_s + a};
}

// Beyond this radius t^4 would overflow; the kernels are replaced by their
// leading asymptotics.
bool beyond_overflow(double t, double c, double y) {
  return t > 1e75 || (t * t > 1e100 * std::max({1.0, std::sqrt(c), y * y}));
}

}  // namespace

double origin_threshold(double c) noexcept { return 1e-6 * std::max(1.0, std::sqrt(c)); }

double angular_closed_form(double a, double b) {
  if (!(a > std::abs(b))) {
    std::ostringstream os;
    os << "angular integral requires a > |b|, got a=" << a << " b=" << b;
    fail(ErrorKind::DomainError, os.str());
  }
  return kPi / std::sqrt((a - b) * (a + b));
}

double asinh_kernel(double r, double c, double y0_norm) {
  require_positive_c(c);
  if (y0_norm <= origin_threshold(c)) return std::log(r * r + y0_norm * y0_norm + c);
  return std::asinh((r * r + c - y0_norm * y0_norm) / (2.0 * y0_norm * std::sqrt(c)));
}

double regularized_asinh_kernel(double r, double c, double y0_norm) {
  require_positive_c(c);
  if (y0_norm <= origin_threshold(c)) return std::log(r * r + y0_norm * y0_norm + c);
  const double u = r * r + c - y0_norm * y0_norm;
  return std::log(0.5 * shifted_root(u, 2.0 * y0_norm * std::sqrt(c)).sum);
}

double asinh_kernel_increment(double r, double c, double y0_norm) {
  require_positive_c(c);
  if (r <= 0.0) return 0.0;
  const double sqrt_b = 2.0 * y0_norm * std::sqrt(c);
  const double u0 = c - y0_norm * y0_norm;
  const ShiftedRoot at0 = shifted_root(u0, sqrt_b);
  if (r > 1e100) return std::log(2.0) + 2.0 * std::log(r) - std::log(at0.sum);
  const double r2 = r * r;
  const ShiftedRoot atr = shifted_root(u0 + r2, sqrt_b);
  return std::log1p(r2 * (atr.sum + at0.sum) / ((atr.root + at0.root) * at0.sum));
}

std::complex<double> kappa(double r, double c, double y0_norm) {
  require_positive_c(c);
  using namespace std::complex_literals;
  const double a = std::sqrt(c);
  const double r2 = r * r;
  const double y2 = y0_norm * y0_norm;
  const std::complex<double> numerator(r2 - y2, -a);
  const std::complex<double> inner = a + 1i * (r2 + y2);
  return numerator / std::sqrt(inner * inner + 4.0 * r2 * y2);
}

double arctan_kernel_rise(double r, double c, double y0_norm) {
  require_positive_c(c);
  if (beyond_overflow(r, c, y0_norm)) return kPi - 2.0 * std::sqrt(c) / (r * r);
  const UpperHalfPoint z = kernel_point(r, c, y0_norm);
  return 2.0 * std::atan2(z.re, z.im);
}

double arctan_kernel_deficit(double r, double c, double y0_norm) {
  require_positive_c(c);
  if (beyond_overflow(r, c, y0_norm)) return 2.0 * std::sqrt(c) / (r * r);
  const UpperHalfPoint z = kernel_point(r, c, y0_norm);
  return 2.0 * std::atan2(z.im, z.re);
}

double arctan_kernel(double r, double c, double y0_norm) {
  const double rise = arctan_kernel_rise(r, c, y0_norm);
  if (rise <= kHalfPi) return rise - kHalfPi;
  return kHalfPi - arctan_kernel_deficit(r, c, y0_norm);
}

IntegralResult integrate_semi_infinite(const RealFunction& kernel, const ShapeFunction& weight,
                                       double tol, KernelGrowth growth,
                                       std::span<const double> extra_breaks) {
  if (growth == KernelGrowth::Logarithmic && !has_integrable_log_moment(weight.tail())) {
    fail(ErrorKind::DivergentIntegral,
         "logarithmically growing kernel against a " + describe(weight.tail()) +
             " density tail: the integral diverges");
  }

  const double end = weight.support_end();
  std::vector<double> breaks{0.0};
  auto add = [&](double r) {
    if (r > 0.0 && std::isfinite(r) && r < end) breaks.push_back(r);
  };
  for (double k : weight.knots()) add(k);
  for (double k : extra_breaks) add(k);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  double tail_scale = weight.length_scale();
  if (std::isfinite(end)) {
    breaks.push_back(end);
  } else {
    const double knee = std::max(8.0 * weight.length_scale(), 2.0 * breaks.back());
    breaks.push_back(knee);
    breaks.push_back(std::numeric_limits<double>::infinity());
    tail_scale = knee;
  }

  auto integrand = [&kernel, &weight](double r) {
    const double w = weight.derivative(r);
    if (w == 0.0) return 0.0;
    return kernel(r) * w;
  };
  return integrate_panels(integrand, breaks, tol, tail_scale);
}

}  // namespace isoppp

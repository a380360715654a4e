#include "isoppp/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "isoppp/error.hpp"

namespace isoppp {

namespace {

struct Panel {
  double a;
  double b;
  double value;
  double error;
  int mapping;  // index into the integrand list
  bool operator<(const Panel& other) const { return error < other.error; }
};

class KronrodRule {
 public:
  explicit KronrodRule(std::vector<RealFunction> integrands) : integrands_(std::move(integrands)) {}

  // One 15-point Kronrod step; the embedded 7-point Gauss rule gives the error.
  Panel apply(int mapping, double a, double b) {
    using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
    using Gauss = boost::math::quadrature::gauss<double, 7>;
    // Nonnegative nodes, centre first; every second Kronrod node is a Gauss node.
    static const auto& nodes = Kronrod::abscissa();
    static const auto& kw = Kronrod::weights();
    static const auto& gw = Gauss::weights();
    const auto& g = integrands_[static_cast<std::size_t>(mapping)];
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = eval(g, centre);
    double kronrod = kw[0] * fc;
    double gauss = gw[0] * fc;
    for (std::size_t j = 1; j < nodes.size(); ++j) {
      const double dx = half * nodes[j];
      const double pair = eval(g, centre - dx) + eval(g, centre + dx);
      kronrod += kw[j] * pair;
      if (j % 2 == 0) gauss += gw[j / 2] * pair;
    }
    return Panel{a, b, half * kronrod, half * std::abs(kronrod - gauss), mapping};
  }

  std::size_t evaluations() const noexcept { return evaluations_; }

 private:
  double eval(const RealFunction& g, double x) {
    ++evaluations_;
    const double y = g(x);
    if (std::isnan(y)) {
      std::ostringstream os;
      os << "integrand returned NaN at x=" << x;
      fail(ErrorKind::DomainError, os.str());
    }
    return y;
  }

  std::vector<RealFunction> integrands_;
  std::size_t evaluations_ = 0;
};

bool too_narrow(const Panel& p) {
  const double scale = std::max({std::abs(p.a), std::abs(p.b), std::numeric_limits<double>::min()});
  return (p.b - p.a) <= 64.0 * std::numeric_limits<double>::epsilon() * scale;
}

}  // namespace

IntegralResult integrate_panels(const RealFunction& f, std::span<const double> breaks, double tol,
                                double tail_scale, std::size_t max_evaluations) {
  if (!(tol > 0.0)) fail(ErrorKind::InvalidArgument, "quadrature tolerance must be positive");
  if (breaks.size() < 2) fail(ErrorKind::InvalidArgument, "quadrature needs at least two breaks");
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] >= breaks[i]) || std::isinf(breaks[i]))
      fail(ErrorKind::InvalidArgument, "quadrature breaks must be finite and nondecreasing");
  }

  std::vector<RealFunction> integrands{f};
  const bool infinite_tail = std::isinf(breaks.back());
  const double tail_start = infinite_tail ? breaks[breaks.size() - 2] : 0.0;
  if (infinite_tail) {
    if (!(tail_scale > 0.0)) fail(ErrorKind::InvalidArgument, "tail scale must be positive");
    integrands.emplace_back([&f, tail_start, tail_scale](double u) {
      if (u <= 0.0) return 0.0;
      const double r = tail_start + tail_scale * (1.0 - u) / u;
      const double y = f(r);
      if (y == 0.0) return 0.0;
      return y * tail_scale / (u * u);
    });
  }

  KronrodRule rule(std::move(integrands));
  std::priority_queue<Panel> active;
  double retired_value = 0.0;
  double retired_error = 0.0;

  const std::size_t finite_panels = breaks.size() - (infinite_tail ? 2 : 1);
  for (std::size_t i = 0; i < finite_panels; ++i) {
    if (breaks[i + 1] > breaks[i]) active.push(rule.apply(0, breaks[i], breaks[i + 1]));
  }
  if (infinite_tail) active.push(rule.apply(1, 0.0, 1.0));

  auto totals = [&]() {
    double v = retired_value, e = retired_error;
    auto copy = active;
    while (!copy.empty()) {
      v += copy.top().value;
      e += copy.top().error;
      copy.pop();
    }
    return std::pair{v, e};
  };

  // Running sums are refreshed exactly every so often to avoid drift.
  auto [value, error] = totals();
  std::size_t iterations = 0;
  while (!active.empty()) {
    if (error <= std::max(tol, tol * std::abs(value))) break;
    if (rule.evaluations() >= max_evaluations) break;
    Panel worst = active.top();
    active.pop();
    if (too_narrow(worst)) {
      retired_value += worst.value;
      retired_error += worst.error;
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = rule.apply(worst.mapping, worst.a, mid);
    const Panel right = rule.apply(worst.mapping, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    active.push(left);
    active.push(right);
    if (++iterations % 256 == 0) std::tie(value, error) = totals();
  }
  std::tie(value, error) = totals();

  IntegralResult result;
  result.value = value;
  result.abs_error = error;
  result.converged = error <= std::max(tol, tol * std::abs(value));
  result.evaluations = rule.evaluations();
  return result;
}

IntegralResult integrate(const RealFunction& f, double a, double b, double tol,
                         std::size_t max_evaluations) {
  if (b < a) {
    IntegralResult r = integrate(f, b, a, tol, max_evaluations);
    r.value = -r.value;
    return r;
  }
  const std::array<double, 2> breaks{a, b};
  return integrate_panels(f, breaks, tol, 1.0, max_evaluations);
}

}  // namespace isoppp

#include "isoppp/shapes.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "isoppp/error.hpp"

namespace isoppp {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Height-1 plateau on [0, r0] with a raised-cosine rolloff reaching 0 at r1.
double plateau(double r, double r0, double r1) {
  if (r <= r0) return 1.0;
  if (r >= r1) return 0.0;
  return 0.5 * (1.0 + std::cos(kPi * (r - r0) / (r1 - r0)));
}

double plateau_slope(double r, double r0, double r1) {
  if (r <= r0 || r >= r1) return 0.0;
  const double width = r1 - r0;
  return -0.5 * kPi / width * std::sin(kPi * (r - r0) / width);
}

void require_ordered(double r0, double r1, const char* what) {
  if (!(r0 > 0.0) || !(r1 > r0) || !std::isfinite(r1)) {
    std::ostringstream os;
    os << what << ": need 0 < plateau_end < rolloff_end, got " << r0 << ", " << r1;
    fail(ErrorKind::InvalidScenarioParams, os.str());
  }
}

}  // namespace

std::string describe(const TailClass& tail) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const CompactSupport& t) { os << "CompactSupport(" << t.support_end << ")"; },
                 [&](const PowerDecay& t) { os << "PowerDecay(" << t.nu << ")"; },
                 [&](const ExponentialDecay& t) { os << "ExponentialDecay(" << t.rate << ")"; },
                 [&](const NonDecaying&) { os << "NonDecaying"; },
                 [&](const LogDecay&) { os << "LogDecay"; },
             },
             tail);
  return os.str();
}

bool has_integrable_log_moment(const TailClass& tail) noexcept {
  return std::holds_alternative<CompactSupport>(tail) || std::holds_alternative<PowerDecay>(tail) ||
         std::holds_alternative<ExponentialDecay>(tail);
}

bool has_finite_node_count(const TailClass& tail) noexcept {
  if (const auto* p = std::get_if<PowerDecay>(&tail)) return p->nu > 2.0;
  return std::holds_alternative<CompactSupport>(tail) ||
         std::holds_alternative<ExponentialDecay>(tail);
}

ShapeFunction::ShapeFunction(std::string name, Profile value, Profile derivative, TailClass tail,
                             double limit_at_infinity, double length_scale,
                             std::vector<double> knots) {
  if (!value || !derivative) fail(ErrorKind::InvalidArgument, "shape profile callables must be set");
  if (!(length_scale > 0.0)) fail(ErrorKind::InvalidArgument, "shape length scale must be positive");
  std::visit(overloaded{
                 [](const CompactSupport& t) {
                   if (!(t.support_end > 0.0))
                     fail(ErrorKind::InvalidArgument, "CompactSupport needs support_end > 0");
                 },
                 [](const PowerDecay& t) {
                   if (!(t.nu > 0.0)) fail(ErrorKind::InvalidExponent, "PowerDecay needs nu > 0");
                 },
                 [](const ExponentialDecay& t) {
                   if (!(t.rate > 0.0))
                     fail(ErrorKind::InvalidArgument, "ExponentialDecay needs rate > 0");
                 },
                 [](const auto&) {},
             },
             tail);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  const double f0 = value(0.0);
  impl_ = std::make_shared<const Impl>(Impl{std::move(name), std::move(value), std::move(derivative),
                                            tail, f0, limit_at_infinity, length_scale,
                                            std::move(knots)});
}

double ShapeFunction::support_end() const noexcept {
  if (const auto* c = std::get_if<CompactSupport>(&impl_->tail)) return c->support_end;
  return std::numeric_limits<double>::infinity();
}

std::string_view to_string(Scenario id) noexcept {
  switch (id) {
    case Scenario::FiniteNetwork: return "A";
    case Scenario::UrbanHotspot: return "B";
    case Scenario::Scattered: return "C";
    case Scenario::CarrierSense: return "D";
  }
  return "?";
}

Scenario parse_scenario(std::string_view text) {
  std::string key(text);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (key == "a" || key == "finite" || key == "finite_network") return Scenario::FiniteNetwork;
  if (key == "b" || key == "hotspot" || key == "urban_hotspot") return Scenario::UrbanHotspot;
  if (key == "c" || key == "scattered") return Scenario::Scattered;
  if (key == "d" || key == "carrier_sense" || key == "csma") return Scenario::CarrierSense;
  fail(ErrorKind::InvalidScenarioParams, "unknown scenario '" + std::string(text) + "'");
}

ShapeFunction finite_network_shape(double plateau_end, double rolloff_end) {
  require_ordered(plateau_end, rolloff_end, "scenario A");
  const double r0 = plateau_end;
  const double r1 = rolloff_end;
  return ShapeFunction(
      "A", [=](double r) { return plateau(r, r0, r1); },
      [=](double r) { return plateau_slope(r, r0, r1); }, CompactSupport{r1}, 0.0, r1, {r0, r1});
}

ShapeFunction scattered_shape(double decay_length) {
  if (!(decay_length > 0.0) || !std::isfinite(decay_length))
    fail(ErrorKind::InvalidScenarioParams, "scenario C: decay length must be positive");
  const double rho = decay_length;
  return ShapeFunction(
      "C", [=](double r) { return std::exp(-r / rho); },
      [=](double r) { return -std::exp(-r / rho) / rho; }, ExponentialDecay{1.0 / rho}, 0.0, rho);
}

ShapeFunction carrier_sense_shape(double sensing_threshold, double alpha) {
  if (!(sensing_threshold > 0.0) || !std::isfinite(sensing_threshold))
    fail(ErrorKind::InvalidScenarioParams, "scenario D: sensing threshold must be positive");
  if (!(alpha > 0.0)) fail(ErrorKind::InvalidScenarioParams, "scenario D: alpha must be positive");
  const double delta = sensing_threshold;
  const double a = alpha;
  return ShapeFunction(
      "D", [=](double r) { return -std::expm1(-delta * std::pow(r, a)); },
      [=](double r) {
        if (r <= 0.0) return a == 1.0 ? delta : 0.0;
        const double x = delta * std::pow(r, a);
        if (x > 745.0) return 0.0;
        return a * x / r * std::exp(-x);
      },
      NonDecaying{}, 1.0, std::pow(delta, -1.0 / a));
}

ShapeFunction build_scenario(Scenario id, const ScenarioParams& p) {
  switch (id) {
    case Scenario::FiniteNetwork: return finite_network_shape(p.plateau_end, p.rolloff_end);
    case Scenario::UrbanHotspot: {
      require_ordered(p.hotspot_plateau_end, p.hotspot_rolloff_end, "scenario B hotspot");
      require_ordered(p.base_plateau_end, p.base_rolloff_end, "scenario B base");
      if (p.hotspot_level < 0.0 || p.base_level < 0.0 || p.hotspot_level + p.base_level > 1.0 ||
          p.hotspot_level + p.base_level <= 0.0)
        fail(ErrorKind::InvalidScenarioParams,
             "scenario B: levels must be non-negative with 0 < hotspot + base <= 1");
      const double bh = p.hotspot_level, h0 = p.hotspot_plateau_end, h1 = p.hotspot_rolloff_end;
      const double bu = p.base_level, u0 = p.base_plateau_end, u1 = p.base_rolloff_end;
      const double end = std::max(h1, u1);
      return ShapeFunction(
          "B", [=](double r) { return bh * plateau(r, h0, h1) + bu * plateau(r, u0, u1); },
          [=](double r) { return bh * plateau_slope(r, h0, h1) + bu * plateau_slope(r, u0, u1); },
          CompactSupport{end}, 0.0, end, {h0, h1, u0, u1});
    }
    case Scenario::Scattered: return scattered_shape(p.decay_length);
    case Scenario::CarrierSense: return carrier_sense_shape(p.sensing_threshold, p.alpha);
  }
  fail(ErrorKind::InvalidScenarioParams, "unknown scenario id");
}

ShapeFunction constant_shape(double level) {
  if (!(level > 0.0) || level > 1.0)
    fail(ErrorKind::InvalidLevel, "constant shape level must lie in (0, 1]");
  return ShapeFunction(
      "constant", [=](double) { return level; }, [](double) { return 0.0; }, NonDecaying{}, level,
      1.0);
}

ShapeFunction power_tail_shape(double nu, double knee) {
  if (!(nu > 0.0) || !std::isfinite(nu))
    fail(ErrorKind::InvalidExponent, "power tail exponent must be positive");
  if (!(knee > 0.0)) fail(ErrorKind::InvalidArgument, "power tail knee radius must be positive");
  return ShapeFunction(
      "powerTail",
      [=](double r) {
        const double x = r / knee;
        return std::pow(1.0 + x * x, -0.5 * nu);
      },
      [=](double r) {
        const double x = r / knee;
        return -nu * x / knee * std::pow(1.0 + x * x, -0.5 * nu - 1.0);
      },
      PowerDecay{nu}, 0.0, knee);
}

ShapeFunction log_tail_shape(double knee, double exponent) {
  if (!(knee > 0.0)) fail(ErrorKind::InvalidArgument, "log tail knee radius must be positive");
  if (!(exponent > 0.0) || exponent > 1.0)
    fail(ErrorKind::InvalidExponent, "log tail exponent must lie in (0, 1]");
  return ShapeFunction(
      "logTail", [=](double r) { return std::pow(1.0 + std::log1p(r / knee), -exponent); },
      [=](double r) {
        return -exponent * std::pow(1.0 + std::log1p(r / knee), -exponent - 1.0) / (knee + r);
      },
      LogDecay{}, 0.0, knee);
}

}  // namespace isoppp

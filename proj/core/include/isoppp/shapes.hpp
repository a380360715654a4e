#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace isoppp {

// Asymptotic behaviour of a radial density profile, declared by whoever
// constructs the shape.
struct CompactSupport {
  double support_end;  ///< F(r) = 0 for r >= support_end
};
struct PowerDecay {
  double nu;  ///< F(r) ~ r^-nu
};
struct ExponentialDecay {
  double rate;  ///< F(r) ~ exp(-rate * r)
};
struct NonDecaying {};
struct LogDecay {};

using TailClass = std::variant<CompactSupport, PowerDecay, ExponentialDecay, NonDecaying, LogDecay>;

std::string describe(const TailClass& tail);

/// True when the intensity decays fast enough for the alpha = 2 mean
/// interference to exist (any power law or faster).
bool has_integrable_log_moment(const TailClass& tail) noexcept;

/// True when the expected number of nodes, 2*pi*lambda*int r F(r) dr, is finite.
bool has_finite_node_count(const TailClass& tail) noexcept;

/// Isotropic radial density profile F(r) in [0, 1] with lambda(x) = lambda * F(|x|).
///
/// Instances are immutable and cheap to copy; the profile callables are shared.
class ShapeFunction {
 public:
  using Profile = std::function<double(double)>;

  /// `limit_at_infinity` is lim F(r); `length_scale` is a characteristic
  /// radius used to place quadrature and sampling grids; `knots` are radii
  /// where F is not smooth (they become integration split points).
  ShapeFunction(std::string name, Profile value, Profile derivative, TailClass tail,
                double limit_at_infinity, double length_scale, std::vector<double> knots = {});

  double value(double r) const { return impl_->value(r); }
  double operator()(double r) const { return impl_->value(r); }
  /// f(r) = dF/dr, supplied analytically.
  double derivative(double r) const { return impl_->derivative(r); }

  const TailClass& tail() const noexcept { return impl_->tail; }
  double at_origin() const noexcept { return impl_->at_origin; }
  double limit_at_infinity() const noexcept { return impl_->limit_at_infinity; }
  double length_scale() const noexcept { return impl_->length_scale; }
  std::span<const double> knots() const noexcept { return impl_->knots; }
  const std::string& name() const noexcept { return impl_->name; }

  /// Radius beyond which F vanishes identically, or +inf.
  double support_end() const noexcept;

 private:
  struct Impl {
    std::string name;
    Profile value;
    Profile derivative;
    TailClass tail;
    double at_origin;
    double limit_at_infinity;
    double length_scale;
    std::vector<double> knots;
  };
  std::shared_ptr<const Impl> impl_;
};

enum class Scenario { FiniteNetwork, UrbanHotspot, Scattered, CarrierSense };

std::string_view to_string(Scenario id) noexcept;
/// Accepts "A".."D" as well as the descriptive names.
Scenario parse_scenario(std::string_view text);

/// Parameters for the four illustration scenarios. Only the fields relevant to
/// the chosen scenario are read.
struct ScenarioParams {
  // A: plateau of height 1 on [0, plateau_end], raised-cosine rolloff to 0 at rolloff_end.
  double plateau_end = 500.0;
  double rolloff_end = 800.0;

  // B: hotspot plateau stacked on an urban plateau; levels must sum to <= 1.
  double hotspot_level = 0.6;
  double hotspot_plateau_end = 10.0;
  double hotspot_rolloff_end = 30.0;
  double base_level = 0.4;
  double base_plateau_end = 100.0;
  double base_rolloff_end = 300.0;

  // C: exp(-r / decay_length).
  double decay_length = 100.0;

  // D: 1 - exp(-sensing_threshold * r^alpha).
  double sensing_threshold = 1e-5;
  double alpha = 4.0;
};

ShapeFunction build_scenario(Scenario id, const ScenarioParams& params = {});

ShapeFunction finite_network_shape(double plateau_end, double rolloff_end);
ShapeFunction scattered_shape(double decay_length);
ShapeFunction carrier_sense_shape(double sensing_threshold, double alpha);

/// F(r) = level everywhere (stationary PPP thinned by `level`).
ShapeFunction constant_shape(double level = 1.0);

/// F(r) = (1 + (r/knee)^2)^(-nu/2).
ShapeFunction power_tail_shape(double nu, double knee);

/// F(r) = (1 + log(1 + r/knee))^(-exponent), 0 < exponent <= 1: decays slower
/// than any power of r.
ShapeFunction log_tail_shape(double knee, double exponent = 0.5);

}  // namespace isoppp

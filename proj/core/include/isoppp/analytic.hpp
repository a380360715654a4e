#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string_view>

#include "isoppp/quadrature.hpp"
#include "isoppp/shapes.hpp"

namespace isoppp {

using RandomEngine = std::mt19937_64;

enum class FadingKind { UnitDeterministic, RayleighExponential, Custom };

std::string_view to_string(FadingKind kind) noexcept;

/// Power fading coefficient law. All laws have unit mean.
class FadingLaw {
 public:
  using Sampler = std::function<double(RandomEngine&)>;
  /// P(g >= x).
  using Tail = std::function<double(double)>;

  static FadingLaw rayleigh();
  static FadingLaw unit();
  /// `tail` is optional; without it the dominant-interferer bound is unavailable.
  static FadingLaw custom(Sampler sampler, Tail tail = {});

  FadingKind kind() const noexcept { return kind_; }
  double sample(RandomEngine& rng) const;
  bool has_tail() const noexcept;
  double tail_probability(double x) const;

 private:
  FadingLaw(FadingKind kind, Sampler sampler, Tail tail)
      : kind_(kind), sampler_(std::move(sampler)), tail_(std::move(tail)) {}

  FadingKind kind_;
  Sampler sampler_;
  Tail tail_;
};

/// Path loss l(r) = 1 / (c + r^alpha) plus fading law.
struct ChannelModel {
  double alpha = 4.0;
  double c = 1.0;
  FadingLaw fading = FadingLaw::rayleigh();

  double path_loss(double distance) const;
};

struct LinkConfig {
  double lambda_scale = 1e-3;  ///< intensity scale (nodes per unit area)
  double y0_norm = 0.0;        ///< receiver distance from the origin
  double distance = 10.0;      ///< link length d
  double beta = 1.0;           ///< SINR threshold
  std::optional<double> eta_db;  ///< mean SNR in dB; empty means noise-free

  /// exp(-beta / eta), 1 when noise-free.
  double noise_success() const;
};

void validate(const ChannelModel& channel);
void validate(const LinkConfig& link);

enum class Tristate { Yes, No, Unknown };
std::string_view to_string(Tristate t) noexcept;

struct FinitenessVerdict {
  bool mean_interference_finite = false;
  bool expected_count_finite = false;
  Tristate interference_as_finite = Tristate::Unknown;
};

/// Driving function for alpha = 2: the mean interference per unit intensity.
/// Throws DivergentIntegral for densities decaying slower than any power law.
IntegralResult interference_driving_a2(const ShapeFunction& shape, double y0_norm, double c,
                                       double tol = 1e-10);

/// Driving function for alpha = 4; finite for every shape.
IntegralResult interference_driving_a4(const ShapeFunction& shape, double y0_norm, double c,
                                       double tol = 1e-10);

/// Dispatches on alpha in {2, 4}; UnsupportedAlpha otherwise.
IntegralResult interference_driving(const ShapeFunction& shape, double alpha, double y0_norm,
                                    double c, double tol = 1e-10);

/// E[I(y0)] = lambda * A_alpha(y0, c); independent of the fading law.
IntegralResult mean_interference(const ShapeFunction& shape, const ChannelModel& channel,
                                 double lambda_scale, double y0_norm, double tol = 1e-10);

/// log E[exp(-s I(y0))] = -lambda s A_alpha(y0, s + c) under Rayleigh fading;
/// -inf when the interference is almost surely infinite.
double log_laplace_transform(const ShapeFunction& shape, const ChannelModel& channel,
                             double lambda_scale, double y0_norm, double s, double tol = 1e-10);

/// E[exp(-s I(y0))] under Rayleigh fading, in [0, 1].
double laplace_transform(const ShapeFunction& shape, const ChannelModel& channel,
                         double lambda_scale, double y0_norm, double s, double tol = 1e-10);

FinitenessVerdict classify_finiteness(const ShapeFunction& shape, const ChannelModel& channel);

}  // namespace isoppp

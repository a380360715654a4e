#include "shape_config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <string>

#include "isoppp/error.hpp"

namespace isoppp::cli {

namespace {

using nlohmann::json;

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

std::string canonical_name(const std::string& name) {
  const std::string key = lower(name);
  if (key == "constant" || key == "stationary") return "constant";
  if (key == "powertail" || key == "power_tail" || key == "power") return "powerTail";
  if (key == "logtail" || key == "log_tail" || key == "log") return "logTail";
  return std::string(to_string(parse_scenario(name)));
}

// Reads a numeric parameter, recording the value used.
class Params {
 public:
  explicit Params(const json& given) : given_(given) {
    if (!given_.is_object()) fail(ErrorKind::InvalidArgument, "shape params must be a JSON object");
  }

  double get(const std::string& key, double fallback) {
    seen_.insert(key);
    double v = fallback;
    if (given_.contains(key)) {
      if (!given_[key].is_number())
        fail(ErrorKind::InvalidArgument, "shape parameter '" + key + "' must be a number");
      v = given_[key].get<double>();
    }
    resolved_[key] = v;
    return v;
  }

  bool has(const std::string& key) const { return given_.contains(key); }
  void mark(const std::string& key) { seen_.insert(key); }

  json finish() const {
    for (const auto& [key, _] : given_.items())
      if (!seen_.count(key)) fail(ErrorKind::InvalidArgument, "unknown shape parameter '" + key + "'");
    return resolved_;
  }

 private:
  const json& given_;
  std::set<std::string> seen_;
  json resolved_ = json::object();
};

}  // namespace

ResolvedShape resolve_shape(const json& descriptor) {
  std::string name;
  json given = json::object();
  if (descriptor.is_string()) {
    name = descriptor.get<std::string>();
  } else if (descriptor.is_object() && descriptor.contains("scenario") &&
             descriptor["scenario"].is_string()) {
    name = descriptor["scenario"].get<std::string>();
    if (descriptor.contains("params")) given = descriptor["params"];
  } else {
    fail(ErrorKind::InvalidArgument, "shape descriptor needs a \"scenario\" name");
  }
  const std::string id = canonical_name(name);
  Params p(given);

  auto build = [&]() -> ShapeFunction {
    if (id == "constant") return constant_shape(p.get("level", 1.0));
    if (id == "powerTail") {
      const double nu = p.get("nu", 2.0);
      return power_tail_shape(nu, p.get("r0", 1.0));
    }
    if (id == "logTail") {
      const double r0 = p.get("r0", 1.0);
      return log_tail_shape(r0, p.get("exponent", 0.5));
    }
    ScenarioParams sp;
    switch (parse_scenario(id)) {
      case Scenario::FiniteNetwork:
        sp.plateau_end = p.get("r0", sp.plateau_end);
        sp.rolloff_end = p.get("r1", sp.rolloff_end);
        return build_scenario(Scenario::FiniteNetwork, sp);
      case Scenario::UrbanHotspot:
        sp.hotspot_level = p.get("hotspot_level", sp.hotspot_level);
        sp.hotspot_plateau_end = p.get("hotspot_r0", sp.hotspot_plateau_end);
        sp.hotspot_rolloff_end = p.get("hotspot_r1", sp.hotspot_rolloff_end);
        sp.base_level = p.get("base_level", sp.base_level);
        sp.base_plateau_end = p.get("base_r0", sp.base_plateau_end);
        sp.base_rolloff_end = p.get("base_r1", sp.base_rolloff_end);
        return build_scenario(Scenario::UrbanHotspot, sp);
      case Scenario::Scattered:
        sp.decay_length = p.get("rho", sp.decay_length);
        return build_scenario(Scenario::Scattered, sp);
      case Scenario::CarrierSense: {
        if (p.has("delta_db")) {
          p.mark("delta_db");
          sp.sensing_threshold = std::pow(10.0, p.get("delta_db", 0.0) / 10.0);
        }
        sp.sensing_threshold = p.get("delta", sp.sensing_threshold);
        sp.alpha = p.get("alpha", sp.alpha);
        return build_scenario(Scenario::CarrierSense, sp);
      }
    }
    fail(ErrorKind::InvalidArgument, "unknown shape '" + name + "'");
  };
  ShapeFunction shape = build();
  return {std::move(shape), json{{"scenario", id}, {"params", p.finish()}}};
}

json shape_descriptor_from_text(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    json parsed = json::parse(text, nullptr, false);
    if (parsed.is_discarded()) fail(ErrorKind::InvalidArgument, "--shape is not valid JSON");
    return parsed;
  }
  return json(std::string(text));
}

}  // namespace isoppp::cli

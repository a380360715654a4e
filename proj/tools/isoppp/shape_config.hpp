#pragma once

#include <string_view>

#include <nlohmann/json.hpp>

#include "isoppp/shapes.hpp"

namespace isoppp::cli {

struct ResolvedShape {
  ShapeFunction shape;
  nlohmann::json descriptor;  // canonical name plus every parameter, defaults filled in
};

// Accepts {"scenario": name, "params": {...}} or a bare name string. Names:
// A-D (or their long names), constant, powerTail, logTail.
ResolvedShape resolve_shape(const nlohmann::json& descriptor);

// Command-line form: JSON text, or a bare name.
nlohmann::json shape_descriptor_from_text(std::string_view text);

}  // namespace isoppp::cli

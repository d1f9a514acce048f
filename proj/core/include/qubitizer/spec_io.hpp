#pragma once

// JSON form of StructuredSpec, e.g.
//   {"kind": "circulant", "m": 16, "n": 3, "weight": [1.0, 0.0], "variant": "recursive"}
// Complex numbers are either a bare real or a [re, im] pair.

#include <string>

#include <nlohmann/json.hpp>

#include "qubitizer/structured.hpp"

namespace qubitizer {

/// Throws kInvalidSpec on missing or mistyped fields; does not run validate().
StructuredSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const StructuredSpec& spec);

/// Throws kParseError when the file is unreadable or not JSON.
nlohmann::json read_json_file(const std::string& path);

}  // namespace qubitizer

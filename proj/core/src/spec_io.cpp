#include "qubitizer/spec_io.hpp"

#include <fstream>

#include "qubitizer/errors.hpp"

namespace qubitizer {

namespace {

using nlohmann::json;

cplx complex_of(const json& v, const char* field) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw Error(ErrorCode::kInvalidSpec, std::string(field) + ": expected a number or [re, im]");
}

json complex_to_json(cplx c) {
  if (c.imag() == 0.0) return c.real();
  return json::array({c.real(), c.imag()});
}

template <class T>
T field_as(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::kInvalidSpec, std::string(key) + ": wrong type");
  }
}

std::vector<cplx> vector_of(const json& j, const char* key) {
  std::vector<cplx> out;
  if (!j.contains(key)) return out;
  if (!j.at(key).is_array()) throw Error(ErrorCode::kInvalidSpec, std::string(key) + ": expected an array");
  for (const auto& v : j.at(key)) out.push_back(complex_of(v, key));
  return out;
}

StructuredKind kind_of(const json& v) {
  if (!v.is_string()) throw Error(ErrorCode::kInvalidSpec, "kind: expected a string");
  return parse_structured_kind(v.get<std::string>());
}

}  // namespace

StructuredSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kInvalidSpec, "spec must be a JSON object");
  if (!j.contains("kind")) throw Error(ErrorCode::kInvalidSpec, "missing field: kind");
  StructuredSpec s;
  s.kind = kind_of(j.at("kind"));
  s.m = field_as<std::size_t>(j, "m", s.m);
  s.n = field_as<std::size_t>(j, "n", s.n);
  if (j.contains("weight")) s.weight = complex_of(j.at("weight"), "weight");
  s.variant = field_as<std::string>(j, "variant", "");
  s.s = field_as<std::size_t>(j, "s", 0);
  if (j.contains("inner")) s.inner = kind_of(j.at("inner"));
  s.table = field_as<std::vector<std::size_t>>(j, "table", {});
  s.psi = vector_of(j, "psi");
  s.phi = vector_of(j, "phi");
  s.index = field_as<std::size_t>(j, "index", 0);
  s.line = field_as<bool>(j, "line", false);
  s.dims = field_as<std::vector<std::size_t>>(j, "dims", {});
  s.cyclic = field_as<std::vector<bool>>(j, "cyclic", {});
  s.axis_weights = field_as<std::vector<double>>(j, "axis_weights", {});
  return s;
}

json spec_to_json(const StructuredSpec& s) {
  json j{{"kind", std::string(to_string(s.kind))},
         {"m", s.m},
         {"n", s.n},
         {"weight", complex_to_json(s.weight)}};
  if (!s.variant.empty()) j["variant"] = s.variant;
  if (s.kind == StructuredKind::CornerEmbed) {
    j["s"] = s.s;
    j["inner"] = std::string(to_string(s.inner));
  }
  if (!s.table.empty()) j["table"] = s.table;
  auto vec = [](const std::vector<cplx>& v) {
    json a = json::array();
    for (cplx c : v) a.push_back(complex_to_json(c));
    return a;
  };
  if (!s.psi.empty()) j["psi"] = vec(s.psi);
  if (!s.phi.empty()) j["phi"] = vec(s.phi);
  if (s.kind == StructuredKind::LineColumn) {
    j["index"] = s.index;
    j["line"] = s.line;
  }
  if (!s.dims.empty()) j["dims"] = s.dims;
  if (!s.cyclic.empty()) j["cyclic"] = s.cyclic;
  if (!s.axis_weights.empty()) j["axis_weights"] = s.axis_weights;
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, path + ": " + e.what());
  }
}

}  // namespace qubitizer

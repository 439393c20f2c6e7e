#include "pstirap/cli/schema_check.hpp"

#include <cmath>

namespace pstirap::cli {

namespace {

using nlohmann::json;

bool has_type(const json& v, const std::string& type) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "boolean") return v.is_boolean();
  if (type == "null") return v.is_null();
  if (type == "number") return v.is_number();
  if (type == "integer") {
    if (v.is_number_integer()) return true;
    return v.is_number_float() && std::isfinite(v.get<double>()) && std::floor(v.get<double>()) == v.get<double>();
  }
  return false;
}

void check(const json& v, const json& schema, const std::string& where, std::vector<std::string>& errors) {
  auto fail = [&](const std::string& msg) { errors.push_back((where.empty() ? "/" : where) + ": " + msg); };

  if (schema.contains("type") && !has_type(v, schema["type"].get<std::string>())) {
    fail("expected " + schema["type"].get<std::string>());
    return;
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const json& e : schema["enum"]) found = found || e == v;
    if (!found) fail("value " + v.dump() + " not in " + schema["enum"].dump());
  }
  if (v.is_number()) {
    const double x = v.get<double>();
    if (schema.contains("minimum") && x < schema["minimum"].get<double>())
      fail("must be >= " + schema["minimum"].dump());
    if (schema.contains("maximum") && x > schema["maximum"].get<double>())
      fail("must be <= " + schema["maximum"].dump());
    if (schema.contains("exclusiveMinimum") && !(x > schema["exclusiveMinimum"].get<double>()))
      fail("must be > " + schema["exclusiveMinimum"].dump());
  }
  if (v.is_object()) {
    const json props = schema.value("properties", json::object());
    if (schema.contains("required"))
      for (const json& key : schema["required"])
        if (!v.contains(key.get<std::string>())) fail("missing required key '" + key.get<std::string>() + "'");
    for (const auto& [key, value] : v.items()) {
      if (props.contains(key))
        check(value, props[key], where + "/" + key, errors);
      else if (schema.value("additionalProperties", true) == false)
        fail("unknown key '" + key + "'");
    }
  }
  if (v.is_array()) {
    if (schema.contains("minItems") && v.size() < schema["minItems"].get<std::size_t>())
      fail("needs at least " + schema["minItems"].dump() + " items");
    if (schema.contains("items"))
      for (std::size_t i = 0; i < v.size(); ++i) check(v[i], schema["items"], where + "/" + std::to_string(i), errors);
  }
}

}  // namespace

std::vector<std::string> schema_errors(const json& doc, const json& schema) {
  std::vector<std::string> errors;
  check(doc, schema, "", errors);
  return errors;
}

}  // namespace pstirap::cli

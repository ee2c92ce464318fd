#include "mlsds/json_util.hpp"

#include <algorithm>
#include <cmath>

namespace mlsds {

Json parse_json_document(std::string_view text, const std::string& root_path) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(root_path, std::string("invalid JSON: ") + e.what());
  }
}

const Json& check_envelope(const Json& doc, const std::string& root_path) {
  if (!doc.is_object())
    throw SchemaError(root_path, "expected a JSON object at top level");
  auto it = doc.find("schema_version");
  if (it == doc.end())
    throw SchemaError(root_path + ".schema_version", "missing required field");
  if (!it->is_string() || it->get<std::string>() != kSchemaVersion)
    throw SchemaError(root_path + ".schema_version",
                      "unsupported schema version, expected \"" +
                          std::string(kSchemaVersion) + "\"");
  return doc;
}

ObjectReader::ObjectReader(const Json& value, std::string path)
    : obj_(value), path_(std::move(path)) {
  if (!obj_.is_object())
    throw SchemaError(path_, "expected a JSON object");
}

std::string ObjectReader::member_path(std::string_view key) const {
  if (path_.empty()) return std::string(key);
  return path_ + "." + std::string(key);
}

const Json& ObjectReader::require(std::string_view key) {
  auto it = obj_.find(key);
  if (it == obj_.end())
    throw SchemaError(member_path(key), "missing required field");
  seen_.emplace_back(key);
  return *it;
}

const Json* ObjectReader::optional(std::string_view key) {
  auto it = obj_.find(key);
  if (it == obj_.end()) return nullptr;
  seen_.emplace_back(key);
  return &*it;
}

std::string ObjectReader::require_string(std::string_view key) {
  return as_string(require(key), member_path(key));
}

double ObjectReader::require_number(std::string_view key) {
  return as_number(require(key), member_path(key));
}

std::int64_t ObjectReader::require_int(std::string_view key) {
  return as_int(require(key), member_path(key));
}

bool ObjectReader::require_bool(std::string_view key) {
  return as_bool(require(key), member_path(key));
}

std::vector<std::string> ObjectReader::require_string_array(
    std::string_view key) {
  return as_string_array(require(key), member_path(key));
}

void ObjectReader::finish() {
  for (auto it = obj_.begin(); it != obj_.end(); ++it) {
    if (std::find(seen_.begin(), seen_.end(), it.key()) == seen_.end())
      throw SchemaError(member_path(it.key()), "unknown field");
  }
}

std::string as_string(const Json& v, const std::string& path) {
  if (!v.is_string()) throw SchemaError(path, "expected a string");
  return v.get<std::string>();
}

double as_number(const Json& v, const std::string& path) {
  if (!v.is_number()) throw SchemaError(path, "expected a number");
  double d = v.get<double>();
  if (!std::isfinite(d)) throw SchemaError(path, "expected a finite number");
  return d;
}

std::int64_t as_int(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) throw SchemaError(path, "expected an integer");
  return v.get<std::int64_t>();
}

bool as_bool(const Json& v, const std::string& path) {
  if (!v.is_boolean()) throw SchemaError(path, "expected a boolean");
  return v.get<bool>();
}

const Json& as_array(const Json& v, const std::string& path) {
  if (!v.is_array()) throw SchemaError(path, "expected an array");
  return v;
}

std::vector<std::string> as_string_array(const Json& v,
                                         const std::string& path) {
  const Json& arr = as_array(v, path);
  std::vector<std::string> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i)
    out.push_back(as_string(arr[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace mlsds

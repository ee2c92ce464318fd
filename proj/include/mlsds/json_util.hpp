#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mlsds/validation.hpp"

namespace mlsds {

// Key order is preserved everywhere so serialized output is deterministic.
using Json = nlohmann::ordered_json;

// Parses a whole document; syntax errors become SchemaError with the byte
// offset reported by the parser.
Json parse_json_document(std::string_view text, const std::string& root_path);

// Checks the {"schema_version": "1"} envelope and returns the same object.
const Json& check_envelope(const Json& doc, const std::string& root_path);

inline constexpr std::string_view kSchemaVersion = "1";

// Strict reader over one JSON object: every key must be consumed by a
// require/optional call, and finish() rejects whatever is left over.
class ObjectReader {
 public:
  ObjectReader(const Json& value, std::string path);

  const std::string& path() const { return path_; }
  std::string member_path(std::string_view key) const;

  const Json& require(std::string_view key);
  const Json* optional(std::string_view key);

  std::string require_string(std::string_view key);
  double require_number(std::string_view key);
  std::int64_t require_int(std::string_view key);
  bool require_bool(std::string_view key);
  std::vector<std::string> require_string_array(std::string_view key);

  void finish();

 private:
  const Json& obj_;
  std::string path_;
  std::vector<std::string> seen_;
};

// Typed coercions with path-annotated errors.
std::string as_string(const Json& v, const std::string& path);
double as_number(const Json& v, const std::string& path);
std::int64_t as_int(const Json& v, const std::string& path);
bool as_bool(const Json& v, const std::string& path);
const Json& as_array(const Json& v, const std::string& path);
std::vector<std::string> as_string_array(const Json& v, const std::string& path);

}  // namespace mlsds

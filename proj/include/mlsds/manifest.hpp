#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mlsds/json_util.hpp"
#include "mlsds/validation.hpp"

namespace mlsds::manifest {

enum class Bus { i2c, spi, uart, other };

struct CommSpec {
  Bus bus = Bus::i2c;
  std::string bus_other;  // set when bus == other
  double max_rate_kbps = 0.0;  // kilobytes per second
  std::string connector;
  std::string payload_schema;  // wire schema identifier
};

struct HardwareSpec {
  double supply_voltage_min_v = 0.0;
  double supply_voltage_max_v = 0.0;
  double operating_current_ma = 0.0;
  std::string processor;
  std::int64_t memory_kb = 0;
};

enum class ComplianceStatus { certified, self_declared, not_applicable };

struct ComplianceClaim {
  std::string standard_id;
  ComplianceStatus status = ComplianceStatus::not_applicable;
  std::optional<std::string> evidence_url;
};

struct SensorManifest {
  std::string name;
  std::string description_technical;
  std::string description_plain;
  std::vector<std::string> features;
  std::vector<std::string> use_cases;
  HardwareSpec hardware;
  CommSpec communication;
  std::vector<ComplianceClaim> compliance;
  std::pair<double, double> dimensions_mm;  // width, height; 3 decimals
};

// Registry of recognized standards, id -> display name. Ships as a data
// file and can be replaced via the CLI's --registry flag.
struct ComplianceRegistry {
  std::map<std::string, std::string> standards;

  bool contains(const std::string& id) const;
  static ComplianceRegistry builtin();
  static ComplianceRegistry parse(std::string_view text,
                                  const std::string& source_name);
};

// Standalone document: {"schema_version": "1", ...manifest fields...}.
SensorManifest parse_manifest(std::string_view source);

// Bundle section (no envelope); `path` prefixes error paths.
SensorManifest parse_manifest_json(const Json& value, const std::string& path);

ValidationReport validate_manifest(const SensorManifest& m,
                                   const ComplianceRegistry& registry);

Json to_json(const SensorManifest& m);
std::string serialize_manifest(const SensorManifest& m);  // with envelope

std::string_view to_string(Bus b);
std::string_view to_string(ComplianceStatus s);

}  // namespace mlsds::manifest

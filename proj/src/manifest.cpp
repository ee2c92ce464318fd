#include "mlsds/manifest.hpp"

#include <cmath>

#include <fmt/format.h>

namespace mlsds::manifest {

std::string_view to_string(Bus b) {
  switch (b) {
    case Bus::i2c: return "i2c";
    case Bus::spi: return "spi";
    case Bus::uart: return "uart";
    case Bus::other: return "other";
  }
  return "other";
}

std::string_view to_string(ComplianceStatus s) {
  switch (s) {
    case ComplianceStatus::certified: return "certified";
    case ComplianceStatus::self_declared: return "self_declared";
    case ComplianceStatus::not_applicable: return "not_applicable";
  }
  return "not_applicable";
}

bool ComplianceRegistry::contains(const std::string& id) const {
  return standards.contains(id);
}

ComplianceRegistry ComplianceRegistry::builtin() {
  return {{
      {"FCC", "Federal Communications Commission equipment authorization"},
      {"FDA", "United States Food and Drug Administration clearance"},
      {"GDPR", "EU General Data Protection Regulation"},
      {"HIPAA", "Health Insurance Portability and Accountability Act"},
      {"IEC-61508", "Functional safety of electrical and electronic systems"},
      {"ISO-26262", "Road vehicles functional safety"},
  }};
}

ComplianceRegistry ComplianceRegistry::parse(std::string_view text,
                                             const std::string& source_name) {
  Json doc = parse_json_document(text, source_name);
  check_envelope(doc, source_name);
  ObjectReader r(doc, source_name);
  r.optional("schema_version");
  const Json& standards = r.require("standards");
  if (!standards.is_object())
    throw SchemaError(r.member_path("standards"), "expected a JSON object");
  ComplianceRegistry registry;
  for (auto it = standards.begin(); it != standards.end(); ++it) {
    registry.standards[it.key()] = as_string(
        it.value(), r.member_path("standards") + "." + it.key());
  }
  r.finish();
  return registry;
}

namespace {

double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

HardwareSpec read_hardware(const Json& value, const std::string& path) {
  ObjectReader r(value, path);
  HardwareSpec hw;
  hw.supply_voltage_min_v = r.require_number("supply_voltage_min_v");
  hw.supply_voltage_max_v = r.require_number("supply_voltage_max_v");
  hw.operating_current_ma = r.require_number("operating_current_ma");
  hw.processor = r.require_string("processor");
  hw.memory_kb = r.require_int("memory_kb");
  r.finish();
  if (!(hw.supply_voltage_min_v > 0.0))
    throw SchemaError(path + ".supply_voltage_min_v",
                      "expected a positive voltage");
  if (hw.supply_voltage_max_v < hw.supply_voltage_min_v)
    throw SchemaError(path + ".supply_voltage_max_v",
                      "expected supply_voltage_max_v >= supply_voltage_min_v");
  if (!(hw.operating_current_ma > 0.0))
    throw SchemaError(path + ".operating_current_ma",
                      "expected a positive current");
  if (hw.memory_kb < 0)
    throw SchemaError(path + ".memory_kb", "expected a nonnegative size");
  return hw;
}

CommSpec read_communication(const Json& value, const std::string& path) {
  ObjectReader r(value, path);
  CommSpec comm;
  std::string bus = r.require_string("bus");
  if (bus == "i2c") {
    comm.bus = Bus::i2c;
  } else if (bus == "spi") {
    comm.bus = Bus::spi;
  } else if (bus == "uart") {
    comm.bus = Bus::uart;
  } else {
    comm.bus = Bus::other;
    comm.bus_other = bus;
  }
  comm.max_rate_kbps = r.require_number("max_rate_kbps");
  comm.connector = r.require_string("connector");
  comm.payload_schema = r.require_string("payload_schema");
  r.finish();
  if (!(comm.max_rate_kbps > 0.0))
    throw SchemaError(path + ".max_rate_kbps", "expected a positive rate");
  return comm;
}

ComplianceClaim read_claim(const Json& value, const std::string& path) {
  ObjectReader r(value, path);
  ComplianceClaim claim;
  claim.standard_id = r.require_string("standard_id");
  if (claim.standard_id.empty())
    throw SchemaError(path + ".standard_id", "expected a nonempty id");
  std::string status = r.require_string("status");
  if (status == "certified") {
    claim.status = ComplianceStatus::certified;
  } else if (status == "self_declared") {
    claim.status = ComplianceStatus::self_declared;
  } else if (status == "not_applicable") {
    claim.status = ComplianceStatus::not_applicable;
  } else {
    throw SchemaError(path + ".status",
                      "expected certified, self_declared, or not_applicable, "
                      "got \"" + status + "\"");
  }
  if (const Json* evidence = r.optional("evidence_url"))
    claim.evidence_url = as_string(*evidence, path + ".evidence_url");
  r.finish();
  return claim;
}

SensorManifest read_manifest_fields(ObjectReader& r) {
  SensorManifest m;
  m.name = r.require_string("name");
  if (m.name.empty())
    throw SchemaError(r.member_path("name"), "expected a nonempty name");
  m.description_technical = r.require_string("description_technical");
  m.description_plain = r.require_string("description_plain");
  if (m.description_plain.empty())
    throw SchemaError(r.member_path("description_plain"),
                      "expected a nonempty description");
  m.features = r.require_string_array("features");
  m.use_cases = r.require_string_array("use_cases");
  m.hardware = read_hardware(r.require("hardware"), r.member_path("hardware"));
  m.communication = read_communication(r.require("communication"),
                                       r.member_path("communication"));
  const Json& claims =
      as_array(r.require("compliance"), r.member_path("compliance"));
  for (std::size_t i = 0; i < claims.size(); ++i) {
    m.compliance.push_back(read_claim(
        claims[i], fmt::format("{}[{}]", r.member_path("compliance"), i)));
  }
  const Json& dims =
      as_array(r.require("dimensions_mm"), r.member_path("dimensions_mm"));
  if (dims.size() != 2)
    throw SchemaError(r.member_path("dimensions_mm"),
                      "expected [width, height]");
  std::string dims_path = r.member_path("dimensions_mm");
  m.dimensions_mm.first = round3(as_number(dims[0], dims_path + "[0]"));
  m.dimensions_mm.second = round3(as_number(dims[1], dims_path + "[1]"));
  if (!(m.dimensions_mm.first > 0.0) || !(m.dimensions_mm.second > 0.0))
    throw SchemaError(dims_path, "expected strictly positive dimensions");
  return m;
}

}  // namespace

SensorManifest parse_manifest(std::string_view source) {
  Json doc = parse_json_document(source, "manifest");
  check_envelope(doc, "manifest");
  ObjectReader r(doc, "manifest");
  r.optional("schema_version");
  SensorManifest m = read_manifest_fields(r);
  r.finish();
  return m;
}

SensorManifest parse_manifest_json(const Json& value, const std::string& path) {
  ObjectReader r(value, path);
  SensorManifest m = read_manifest_fields(r);
  r.finish();
  return m;
}

ValidationReport validate_manifest(const SensorManifest& m,
                                   const ComplianceRegistry& registry) {
  ValidationReport report;
  if (m.name.empty())
    report.add(Severity::error, "manifest.name", "name is empty");
  if (m.description_plain.empty())
    report.add(Severity::error, "manifest.description_plain",
               "plain-language description is empty");
  if (!(m.dimensions_mm.first > 0.0) || !(m.dimensions_mm.second > 0.0))
    report.add(Severity::error, "manifest.dimensions_mm",
               "dimensions must be strictly positive");
  if (!(m.hardware.supply_voltage_min_v > 0.0) ||
      m.hardware.supply_voltage_max_v < m.hardware.supply_voltage_min_v)
    report.add(Severity::error, "manifest.hardware",
               "supply voltage range is invalid");
  if (!(m.hardware.operating_current_ma > 0.0))
    report.add(Severity::error, "manifest.hardware.operating_current_ma",
               "operating current must be positive");
  if (m.hardware.memory_kb < 0)
    report.add(Severity::error, "manifest.hardware.memory_kb",
               "memory size must be nonnegative");
  if (!(m.communication.max_rate_kbps > 0.0))
    report.add(Severity::error, "manifest.communication.max_rate_kbps",
               "transfer rate must be positive");
  for (std::size_t i = 0; i < m.compliance.size(); ++i) {
    const ComplianceClaim& claim = m.compliance[i];
    std::string base = fmt::format("manifest.compliance[{}]", i);
    if (!registry.contains(claim.standard_id)) {
      report.add(Severity::error, base + ".standard_id",
                 "unknown standard \"" + claim.standard_id + "\"");
    }
    if (claim.status == ComplianceStatus::certified &&
        (!claim.evidence_url || claim.evidence_url->empty())) {
      report.add(Severity::warning, base,
                 "certified claim without evidence_url");
    }
  }
  return report;
}

Json to_json(const SensorManifest& m) {
  Json claims = Json::array();
  for (const auto& claim : m.compliance) {
    Json c = {{"standard_id", claim.standard_id},
              {"status", std::string(to_string(claim.status))}};
    if (claim.evidence_url) c["evidence_url"] = *claim.evidence_url;
    claims.push_back(std::move(c));
  }
  return Json{
      {"name", m.name},
      {"description_technical", m.description_technical},
      {"description_plain", m.description_plain},
      {"features", m.features},
      {"use_cases", m.use_cases},
      {"hardware",
       {{"supply_voltage_min_v", m.hardware.supply_voltage_min_v},
        {"supply_voltage_max_v", m.hardware.supply_voltage_max_v},
        {"operating_current_ma", m.hardware.operating_current_ma},
        {"processor", m.hardware.processor},
        {"memory_kb", m.hardware.memory_kb}}},
      {"communication",
       {{"bus", m.communication.bus == Bus::other
                    ? m.communication.bus_other
                    : std::string(to_string(m.communication.bus))},
        {"max_rate_kbps", m.communication.max_rate_kbps},
        {"connector", m.communication.connector},
        {"payload_schema", m.communication.payload_schema}}},
      {"compliance", claims},
      {"dimensions_mm", {m.dimensions_mm.first, m.dimensions_mm.second}},
  };
}

std::string serialize_manifest(const SensorManifest& m) {
  Json doc = Json{{"schema_version", std::string(kSchemaVersion)}};
  Json body = to_json(m);
  for (auto it = body.begin(); it != body.end(); ++it)
    doc[it.key()] = it.value();
  return doc.dump(2) + "\n";
}

}  // namespace mlsds::manifest

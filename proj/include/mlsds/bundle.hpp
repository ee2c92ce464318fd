#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mlsds/footprint.hpp"
#include "mlsds/json_util.hpp"
#include "mlsds/labels.hpp"
#include "mlsds/manifest.hpp"
#include "mlsds/metrics.hpp"
#include "mlsds/study.hpp"
#include "mlsds/validation.hpp"

namespace mlsds::bundle {

struct ModelInput {
  metrics::ModelMeta meta;
  std::vector<metrics::EvalRecord> eval_records;
};

struct FootprintInput {
  std::vector<footprint::BomEntry> bom;
  double transport_kg = 0.0;
  double training_kg = 0.0;
  footprint::UsageProfile usage;
};

struct StudyInput {
  std::vector<study::Participant> participants;
  std::vector<study::Reading> readings;
  study::StudyOptions options;
};

// One datasheet bundle directory: bundle.json plus the CSV files it
// references. The study section is optional; everything else is required.
struct Bundle {
  mlsds::manifest::SensorManifest manifest;
  labels::PrivacyLabel privacy;
  labels::NutritionLabel nutrition;
  ModelInput model;
  FootprintInput footprint;
  std::optional<StudyInput> study;
  std::optional<std::string> generated_at;
};

// Reads <dir>/bundle.json and the referenced CSVs. SchemaError on syntax
// problems, missing sections, or unknown keys; DomainError on value
// violations inside the CSVs. Referenced files resolve relative to <dir>.
Bundle load_bundle(const std::filesystem::path& dir);

// The validated aggregate, ready to render.
struct Datasheet {
  mlsds::manifest::SensorManifest manifest;
  labels::PrivacyLabel privacy;
  labels::NutritionLabel nutrition;
  metrics::ModelReport model;
  footprint::FootprintReport footprint;
  std::optional<study::StudyReport> study;
  std::string generated_at;
  std::string tool_version;
};

struct AssembleOptions {
  bool strict = false;  // promote warnings to errors
};

// Runs every section validator and computes the derived reports. Throws
// AssembleError carrying the full finding list when any error-severity
// finding exists (computation failures such as a one-class evaluation set
// are folded in as error findings). Warnings that did not block assembly
// are appended to *warnings when given.
Datasheet assemble(const Bundle& b,
                   const mlsds::manifest::ComplianceRegistry& registry,
                   const AssembleOptions& opts = {},
                   ValidationReport* warnings = nullptr);

// ISO 8601 UTC, second precision; used when the bundle pins no timestamp.
std::string current_timestamp_utc();

Json to_json(const Datasheet& d);

}  // namespace mlsds::bundle

#include "mlsds/bundle.hpp"

#include <ctime>
#include <fstream>

#include <fmt/format.h>

#include "mlsds/fsio.hpp"
#include "mlsds/version.hpp"

namespace mlsds::bundle {

namespace {

std::ifstream open_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot read " + path.string());
  return in;
}

footprint::UsageProfile read_usage(const Json& value, const std::string& path) {
  ObjectReader r(value, path);
  footprint::UsageProfile usage;
  usage.average_power_w = r.require_number("average_power_w");
  usage.lifetime_hours = r.require_number("lifetime_hours");
  usage.grid_intensity_kg_per_kwh =
      r.require_number("grid_intensity_kg_per_kwh");
  r.finish();
  return usage;
}

}  // namespace

Bundle load_bundle(const std::filesystem::path& dir) {
  std::filesystem::path json_path = dir / "bundle.json";
  Json doc = parse_json_document(read_file(json_path), "bundle");
  check_envelope(doc, "bundle");

  ObjectReader r(doc, "");
  r.optional("schema_version");

  Bundle b;
  if (const Json* ts = r.optional("generated_at"))
    b.generated_at = as_string(*ts, "generated_at");

  b.manifest = mlsds::manifest::parse_manifest_json(r.require("manifest"),
                                                    "manifest");
  b.privacy =
      labels::parse_privacy_label(r.require("privacy_label"), "privacy_label");
  b.nutrition = labels::parse_nutrition_label(r.require("nutrition_label"),
                                              "nutrition_label");

  {
    ObjectReader mr(r.require("model"), "model");
    b.model.meta = metrics::parse_model_meta(mr.require("meta"), "model.meta");
    std::string file = mr.require_string("eval_records");
    mr.finish();
    auto in = open_file(dir / file);
    b.model.eval_records = metrics::read_eval_csv(in, file);
  }

  {
    ObjectReader fr(r.require("footprint"), "footprint");
    std::string file = fr.require_string("bom");
    b.footprint.transport_kg = fr.require_number("transport_kg");
    b.footprint.training_kg = fr.require_number("training_kg");
    b.footprint.usage = read_usage(fr.require("usage"), "footprint.usage");
    fr.finish();
    auto in = open_file(dir / file);
    b.footprint.bom = footprint::read_bom_csv(in, file);
  }

  if (const Json* study_section = r.optional("study")) {
    ObjectReader sr(*study_section, "study");
    StudyInput input;
    std::string participants_file = sr.require_string("participants");
    std::string readings_file = sr.require_string("readings");
    if (const Json* distances = sr.optional("distances")) {
      const Json& arr = as_array(*distances, "study.distances");
      if (arr.empty())
        throw SchemaError("study.distances", "expected a nonempty array");
      input.options.distances.clear();
      for (std::size_t i = 0; i < arr.size(); ++i)
        input.options.distances.push_back(
            as_number(arr[i], fmt::format("study.distances[{}]", i)));
    }
    sr.finish();
    auto pin = open_file(dir / participants_file);
    input.participants = study::read_participants_csv(pin, participants_file);
    auto rin = open_file(dir / readings_file);
    input.readings = study::read_readings_csv(rin, readings_file);
    b.study = std::move(input);
  }

  r.finish();
  return b;
}

Datasheet assemble(const Bundle& b,
                   const mlsds::manifest::ComplianceRegistry& registry,
                   const AssembleOptions& opts, ValidationReport* warnings) {
  ValidationReport report;
  report.merge(mlsds::manifest::validate_manifest(b.manifest, registry));
  report.merge(labels::validate_privacy_label(b.privacy));
  report.merge(labels::validate_nutrition_label(b.nutrition));

  Datasheet d;
  d.manifest = b.manifest;
  d.privacy = b.privacy;
  d.nutrition = b.nutrition;

  try {
    d.model = metrics::build_model_report(b.model.eval_records, b.model.meta);
  } catch (const DomainError& e) {
    report.add(Severity::error, "model.eval_records", e.message());
  }

  try {
    d.footprint =
        footprint::compute_footprint(b.footprint.bom, b.footprint.transport_kg,
                                     b.footprint.training_kg, b.footprint.usage);
  } catch (const DomainError& e) {
    report.add(Severity::error, e.path(), e.message());
  }

  if (b.study) {
    try {
      d.study = study::build_study_report(b.study->participants,
                                          b.study->readings, report,
                                          b.study->options);
    } catch (const DomainError& e) {
      report.add(Severity::error, e.path(), e.message());
    }
  }

  if (opts.strict) report.promote_warnings();
  if (report.has_errors()) throw AssembleError(std::move(report));
  if (warnings) warnings->merge(report);

  d.generated_at = b.generated_at ? *b.generated_at : current_timestamp_utc();
  d.tool_version = std::string(kToolVersion);
  return d;
}

std::string current_timestamp_utc() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  return fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}Z", tm.tm_year + 1900,
                     tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min,
                     tm.tm_sec);
}

Json to_json(const Datasheet& d) {
  Json out = Json{
      {"manifest", mlsds::manifest::to_json(d.manifest)},
      {"privacy_label", labels::to_json(d.privacy)},
      {"nutrition_label", labels::to_json(d.nutrition)},
      {"model", metrics::to_json(d.model)},
      {"footprint", footprint::to_json(d.footprint)},
      {"generated_at", d.generated_at},
      {"tool_version", d.tool_version},
  };
  if (d.study) out["study"] = study::to_json(*d.study);
  return out;
}

}  // namespace mlsds::bundle

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <unistd.h>

#include "mlsds/bundle.hpp"
#include "mlsds/fsio.hpp"
#include "mlsds/render.hpp"
#include "mlsds/version.hpp"
#include "mlsds/wire.hpp"

namespace fs = std::filesystem;
using namespace mlsds;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

bool use_color() {
  static const bool enabled =
      isatty(fileno(stderr)) && std::getenv("MLSDS_NO_COLOR") == nullptr;
  return enabled;
}

void print_findings(const ValidationReport& report) {
  for (const auto& f : report.findings) {
    std::string_view severity = to_string(f.severity);
    if (use_color()) {
      const char* code = f.severity == Severity::error ? "\033[31m" : "\033[33m";
      fmt::print(stderr, "{}{}\033[0m: {}: {}\n", code, severity, f.path,
                 f.message);
    } else {
      fmt::print(stderr, "{}: {}: {}\n", severity, f.path, f.message);
    }
  }
}

void write_report_file(const std::optional<std::string>& report_path,
                       const ValidationReport& report) {
  if (!report_path) return;
  write_file_atomic(*report_path, report.to_json() + "\n");
}

mlsds::manifest::ComplianceRegistry load_registry(
    const std::optional<std::string>& registry_path) {
  if (!registry_path) return mlsds::manifest::ComplianceRegistry::builtin();
  return mlsds::manifest::ComplianceRegistry::parse(
      read_file(*registry_path), fs::path(*registry_path).filename().string());
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  return in;
}

struct CommonOpts {
  std::string bundle_dir;
  std::optional<std::string> report_path;
  std::optional<std::string> registry_path;
  bool strict = false;
};

int run_validate(const CommonOpts& opts) {
  auto registry = load_registry(opts.registry_path);
  ValidationReport warnings;
  try {
    bundle::Bundle b = bundle::load_bundle(opts.bundle_dir);
    bundle::assemble(b, registry, {.strict = opts.strict}, &warnings);
  } catch (const AssembleError& e) {
    print_findings(e.report());
    write_report_file(opts.report_path, e.report());
    return kExitValidation;
  }
  print_findings(warnings);
  write_report_file(opts.report_path, warnings);
  return kExitOk;
}

int run_build(const CommonOpts& opts, const std::string& out_dir,
              const std::string& format) {
  auto registry = load_registry(opts.registry_path);
  ValidationReport warnings;
  bundle::Datasheet d;
  try {
    bundle::Bundle b = bundle::load_bundle(opts.bundle_dir);
    d = bundle::assemble(b, registry, {.strict = opts.strict}, &warnings);
  } catch (const AssembleError& e) {
    print_findings(e.report());
    write_report_file(opts.report_path, e.report());
    return kExitValidation;
  }

  fs::path out(out_dir);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw IoError("cannot create output directory " + out.string());

  render::Document doc = render::build_document(d);
  std::string stem = render::file_stem(d);
  if (format == "md" || format == "both")
    write_file_atomic(out / (stem + ".datasheet.md"),
                      render::render_markdown(doc));
  if (format == "html" || format == "both")
    write_file_atomic(out / (stem + ".datasheet.html"),
                      render::render_html(doc));
  for (const auto& sidecar : render::sidecar_csvs(d))
    write_file_atomic(out / sidecar.filename, sidecar.content);

  print_findings(warnings);
  write_report_file(opts.report_path, warnings);
  return kExitOk;
}

int run_metrics(const std::string& eval_path,
                const std::optional<std::string>& out_dir,
                const std::optional<std::string>& report_path) {
  auto in = open_input(eval_path);
  auto records =
      metrics::read_eval_csv(in, fs::path(eval_path).filename().string());
  metrics::ModelReport report = metrics::build_model_report(records, {});
  std::string json = metrics::to_json(report).dump(2) + "\n";
  if (out_dir) {
    fs::path out(*out_dir);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw IoError("cannot create output directory " + out.string());
    write_file_atomic(out / "model_report.json", json);
    std::ostringstream roc;
    metrics::write_roc_csv(report.roc, roc);
    write_file_atomic(out / "roc.csv", roc.str());
    std::ostringstream pr;
    metrics::write_pr_csv(report.pr, pr);
    write_file_atomic(out / "pr.csv", pr.str());
  } else {
    std::cout << json;
  }
  write_report_file(report_path, {});
  return kExitOk;
}

int run_footprint(const std::string& bom_path, double transport_kg,
                  double training_kg, const footprint::UsageProfile& usage,
                  const std::optional<std::string>& out_dir,
                  const std::optional<std::string>& report_path) {
  auto in = open_input(bom_path);
  auto bom =
      footprint::read_bom_csv(in, fs::path(bom_path).filename().string());
  footprint::FootprintReport report =
      footprint::compute_footprint(bom, transport_kg, training_kg, usage);
  std::string json = footprint::to_json(report).dump(2) + "\n";
  if (out_dir) {
    fs::path out(*out_dir);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw IoError("cannot create output directory " + out.string());
    write_file_atomic(out / "footprint_report.json", json);
    std::ostringstream breakdown;
    footprint::write_breakdown_csv(footprint::footprint_breakdown_table(report),
                                   breakdown);
    write_file_atomic(out / "footprint_breakdown.csv", breakdown.str());
  } else {
    std::cout << json;
  }
  write_report_file(report_path, {});
  return kExitOk;
}

int run_study(const std::string& participants_path,
              const std::string& readings_path,
              const std::vector<double>& distances,
              const std::optional<std::string>& out_dir,
              const std::optional<std::string>& report_path) {
  auto pin = open_input(participants_path);
  auto participants = study::read_participants_csv(
      pin, fs::path(participants_path).filename().string());
  auto rin = open_input(readings_path);
  auto readings =
      study::read_readings_csv(rin, fs::path(readings_path).filename().string());

  study::StudyOptions options;
  if (!distances.empty()) options.distances = distances;

  ValidationReport findings;
  study::StudyReport report =
      study::build_study_report(participants, readings, findings, options);

  Json json = study::to_json(report);
  try {
    Json gaps = Json::object();
    for (const auto& [name, gap] : study::bias_gaps(report)) gaps[name] = gap;
    json["bias_gaps"] = gaps;
  } catch (const DomainError&) {
    // Not enough strata for gaps; the report stands on its own.
  }
  std::string text = json.dump(2) + "\n";

  if (out_dir) {
    fs::path out(*out_dir);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw IoError("cannot create output directory " + out.string());
    write_file_atomic(out / "study_report.json", text);
    const auto strata = {
        std::pair{"study_lighting.csv", &report.by_lighting},
        std::pair{"study_distance.csv", &report.by_distance},
        std::pair{"study_gender.csv", &report.by_gender},
        std::pair{"study_skintone.csv", &report.by_skintone},
    };
    for (const auto& [name, data] : strata) {
      std::ostringstream s;
      study::write_stratum_csv(*data, s);
      write_file_atomic(out / name, s.str());
    }
  } else {
    std::cout << text;
  }

  print_findings(findings);
  write_report_file(report_path, findings);
  return findings.has_errors() ? kExitValidation : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ML sensor datasheet compiler"};
  app.require_subcommand(1);

  CommonOpts validate_opts;
  auto* validate = app.add_subcommand(
      "validate", "Validate a datasheet bundle without writing outputs");
  validate->add_option("--bundle", validate_opts.bundle_dir,
                       "Bundle directory containing bundle.json")
      ->required();
  validate->add_option("--report", validate_opts.report_path,
                       "Write findings as JSON to this file");
  validate->add_option("--registry", validate_opts.registry_path,
                       "Compliance registry JSON file");
  validate->add_flag("--strict", validate_opts.strict,
                     "Promote warnings to errors");

  CommonOpts build_opts;
  std::string out_dir = ".";
  std::string format = "both";
  auto* build = app.add_subcommand(
      "build", "Build the datasheet document and sidecar files");
  build->add_option("--bundle", build_opts.bundle_dir,
                    "Bundle directory containing bundle.json")
      ->required();
  build->add_option("--out", out_dir, "Output directory")
      ->capture_default_str();
  build->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"md", "html", "both"}))
      ->capture_default_str();
  build->add_option("--report", build_opts.report_path,
                    "Write findings as JSON to this file");
  build->add_option("--registry", build_opts.registry_path,
                    "Compliance registry JSON file");
  build->add_flag("--strict", build_opts.strict,
                  "Promote warnings to errors");

  std::string eval_path;
  std::optional<std::string> metrics_out;
  std::optional<std::string> metrics_report;
  auto* metrics_cmd = app.add_subcommand(
      "metrics", "Compute model characteristics from labeled scores");
  metrics_cmd->add_option("--eval", eval_path, "Evaluation scores CSV")
      ->required();
  metrics_cmd->add_option("--out", metrics_out, "Output directory");
  metrics_cmd->add_option("--report", metrics_report,
                          "Write findings as JSON to this file");

  std::string bom_path;
  double transport_kg = 0.0;
  double training_kg = 0.0;
  footprint::UsageProfile usage;
  std::optional<std::string> footprint_out;
  std::optional<std::string> footprint_report;
  auto* footprint_cmd =
      app.add_subcommand("footprint", "Compute the carbon footprint report");
  footprint_cmd->add_option("--bom", bom_path, "Bill-of-materials CSV")
      ->required();
  footprint_cmd->add_option("--transport-kg", transport_kg,
                            "Transport carbon in kg CO2-eq")
      ->capture_default_str();
  footprint_cmd->add_option("--training-kg", training_kg,
                            "Model training carbon in kg CO2-eq")
      ->capture_default_str();
  footprint_cmd->add_option("--power-w", usage.average_power_w,
                            "Average power draw in watts")
      ->capture_default_str();
  footprint_cmd->add_option("--lifetime-hours", usage.lifetime_hours,
                            "Lifetime in hours")
      ->capture_default_str();
  footprint_cmd
      ->add_option("--grid-intensity", usage.grid_intensity_kg_per_kwh,
                   "Grid intensity in kg CO2-eq per kWh")
      ->capture_default_str();
  footprint_cmd->add_option("--out", footprint_out, "Output directory");
  footprint_cmd->add_option("--report", footprint_report,
                            "Write findings as JSON to this file");

  std::string participants_path;
  std::string readings_path;
  std::vector<double> distances;
  std::optional<std::string> study_out;
  std::optional<std::string> study_report;
  auto* study_cmd = app.add_subcommand(
      "study", "Build the stratified end-to-end performance report");
  study_cmd->add_option("--participants", participants_path,
                        "Participants CSV")
      ->required();
  study_cmd->add_option("--readings", readings_path, "Readings CSV")
      ->required();
  study_cmd->add_option("--distances", distances,
                        "Configured study distances in metres");
  study_cmd->add_option("--out", study_out, "Output directory");
  study_cmd->add_option("--report", study_report,
                        "Write findings as JSON to this file");

  auto* wire_cmd =
      app.add_subcommand("wire", "Confidence byte codec utilities");
  wire_cmd->require_subcommand(1);
  double encode_p = 0.0;
  auto* encode = wire_cmd->add_subcommand("encode",
                                          "Encode a confidence to a byte");
  encode->add_option("p", encode_p, "Confidence in [0,1]")->required();
  int decode_raw = 0;
  auto* decode =
      wire_cmd->add_subcommand("decode", "Decode a byte to a confidence");
  decode->add_option("byte", decode_raw, "Byte in [0,255]")
      ->required()
      ->check(CLI::Range(0, 255));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*validate) return run_validate(validate_opts);
    if (*build) return run_build(build_opts, out_dir, format);
    if (*metrics_cmd)
      return run_metrics(eval_path, metrics_out, metrics_report);
    if (*footprint_cmd)
      return run_footprint(bom_path, transport_kg, training_kg, usage,
                           footprint_out, footprint_report);
    if (*study_cmd)
      return run_study(participants_path, readings_path, distances, study_out,
                       study_report);
    if (*wire_cmd) {
      if (*encode)
        fmt::print("{}\n",
                   static_cast<int>(wire::encode_confidence(encode_p).raw));
      else
        fmt::print("{}\n", wire::decode_confidence(
                               {static_cast<std::uint8_t>(decode_raw)}));
      return kExitOk;
    }
  } catch (const IoError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const SchemaError& e) {
    ValidationReport report;
    report.add(Severity::error, e.path(), e.message());
    print_findings(report);
    if (*validate) write_report_file(validate_opts.report_path, report);
    if (*build) write_report_file(build_opts.report_path, report);
    return kExitValidation;
  } catch (const DomainError& e) {
    ValidationReport report;
    report.add(Severity::error, e.path(), e.message());
    print_findings(report);
    if (*validate) write_report_file(validate_opts.report_path, report);
    if (*build) write_report_file(build_opts.report_path, report);
    return kExitValidation;
  }
  return kExitUsage;
}

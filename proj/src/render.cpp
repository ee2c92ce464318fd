#include "mlsds/render.hpp"

#include <sstream>

#include <fmt/format.h>

#include "mlsds/wire.hpp"

namespace mlsds::render {

namespace {

std::string num(double v) { return fmt::format("{}", v); }

std::string kg(double v) { return fmt::format("{:.2f} kg CO2-eq", v); }

std::string pct1(double v) { return fmt::format("{:.1f}%", v); }

std::string prob(double v) { return fmt::format("{:.2f}", v); }

std::string yesno(bool b) { return b ? "yes" : "no"; }

std::string join_list(const std::vector<std::string>& items) {
  if (items.empty()) return "none declared";
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += "; ";
    out += items[i];
  }
  return out;
}

FieldItem field(std::string path, std::string label, std::string value) {
  return {std::move(path), std::move(label), std::move(value)};
}

std::string bus_text(const mlsds::manifest::CommSpec& comm) {
  return comm.bus == mlsds::manifest::Bus::other
             ? comm.bus_other
             : std::string(mlsds::manifest::to_string(comm.bus));
}

std::string modality_text(const labels::NutritionLabel& n) {
  return n.modality == labels::Modality::other
             ? n.modality_other
             : std::string(labels::to_string(n.modality));
}

std::string updateability_text(const labels::PrivacyLabel& p) {
  std::string out(labels::to_string(p.model_updateability));
  if (!p.update_frequency.empty()) out += " (" + p.update_frequency + ")";
  return out;
}

std::string consent_text(const labels::NutritionLabel& n) {
  if (!n.consent_obtained) return "not stated";
  return yesno(*n.consent_obtained);
}

Section standard_section(const bundle::Datasheet& d) {
  Section section{std::string(kSectionTitles[0]), {}};
  const auto& m = d.manifest;

  Subsection description{"Description", {}};
  description.items = {
      field("manifest.name", "Name", m.name),
      field("manifest.description_plain", "Plain-language description",
            m.description_plain),
      field("manifest.description_technical", "Technical description",
            m.description_technical),
      field("manifest.features", "Features", join_list(m.features)),
      field("manifest.use_cases", "Use cases", join_list(m.use_cases)),
  };
  section.subsections.push_back(std::move(description));

  Subsection hardware{"Hardware Characteristics", {}};
  hardware.items = {
      field("manifest.dimensions_mm", "Dimensions",
            fmt::format("{} mm x {} mm", num(m.dimensions_mm.first),
                        num(m.dimensions_mm.second))),
      field("manifest.hardware.supply_voltage_min_v", "Supply voltage (min)",
            num(m.hardware.supply_voltage_min_v) + " V"),
      field("manifest.hardware.supply_voltage_max_v", "Supply voltage (max)",
            num(m.hardware.supply_voltage_max_v) + " V"),
      field("manifest.hardware.operating_current_ma", "Operating current",
            num(m.hardware.operating_current_ma) + " mA"),
      field("manifest.hardware.processor", "Processor", m.hardware.processor),
      field("manifest.hardware.memory_kb", "Memory",
            fmt::format("{} kB", m.hardware.memory_kb)),
  };
  section.subsections.push_back(std::move(hardware));

  Subsection comm{"Communication Specification", {}};
  comm.items = {
      field("manifest.communication.bus", "Bus", bus_text(m.communication)),
      field("manifest.communication.max_rate_kbps", "Max transfer rate",
            num(m.communication.max_rate_kbps) + " kbps"),
      field("manifest.communication.connector", "Connector",
            m.communication.connector),
      field("manifest.communication.payload_schema", "Payload schema",
            m.communication.payload_schema),
      NoteItem{fmt::format(
          "The payload is a single confidence byte; confidence = raw / 255, "
          "worst-case quantization error {:.5f}.",
          wire::kQuantizationBound)},
  };
  section.subsections.push_back(std::move(comm));

  Subsection compliance{"Compliance and Certification", {}};
  TableItem claims;
  claims.paths = {"manifest.compliance"};
  claims.header = {"Standard", "Status", "Evidence"};
  for (const auto& claim : m.compliance) {
    claims.rows.push_back(
        {claim.standard_id,
         std::string(mlsds::manifest::to_string(claim.status)),
         claim.evidence_url && !claim.evidence_url->empty()
             ? *claim.evidence_url
             : "none"});
  }
  compliance.items.push_back(std::move(claims));
  section.subsections.push_back(std::move(compliance));
  return section;
}

Section iot_section(const bundle::Datasheet& d) {
  Section section{std::string(kSectionTitles[1]), {}};
  const auto& p = d.privacy;

  Subsection label{"Security and Privacy Label", {}};
  TableItem sensors;
  sensors.paths = {"privacy_label.sensors_present"};
  sensors.header = {"Sensor", "Collection"};
  for (const auto& s : p.sensors_present) {
    sensors.rows.push_back(
        {s.kind == labels::SensorKind::other
             ? s.kind_other
             : std::string(labels::to_string(s.kind)),
         std::string(labels::to_string(s.collection))});
  }
  label.items.push_back(std::move(sensors));
  label.items.push_back(field("privacy_label.data_stored_on_device",
                              "Data stored on device",
                              yesno(p.data_stored_on_device)));
  label.items.push_back(field("privacy_label.data_transmitted_off_device",
                              "Data transmitted off device",
                              yesno(p.data_transmitted_off_device)));
  label.items.push_back(field("privacy_label.security_mechanisms",
                              "Security mechanisms",
                              join_list(p.security_mechanisms)));
  label.items.push_back(field("privacy_label.model_updateability",
                              "Model updateability", updateability_text(p)));
  label.items.push_back(field("privacy_label.secondary_layer_url",
                              "Secondary layer", p.secondary_layer_url));
  section.subsections.push_back(std::move(label));
  return section;
}

Section ai_section(const bundle::Datasheet& d, const std::string& stem) {
  Section section{std::string(kSectionTitles[2]), {}};
  const auto& n = d.nutrition;

  Subsection nutrition{"Dataset Nutrition Label", {}};
  nutrition.items = {
      field("nutrition_label.dataset_name", "Dataset", n.dataset_name),
      field("nutrition_label.upstream_sources", "Upstream sources",
            join_list(n.upstream_sources)),
      field("nutrition_label.source_category", "Source category",
            std::string(labels::to_string(n.source_category))),
      field("nutrition_label.license", "License", n.license),
      field("nutrition_label.modality", "Modality", modality_text(n)),
      field("nutrition_label.human_labeled", "Human labeled",
            yesno(n.human_labeled)),
      field("nutrition_label.contains_human_data", "Contains human data",
            yesno(n.contains_human_data)),
      field("nutrition_label.consent_obtained", "Consent obtained",
            consent_text(n)),
      field("nutrition_label.actively_managed", "Actively managed",
            yesno(n.actively_managed)),
  };
  labels::LabelSummary summary = labels::summarize_label(n);
  std::vector<std::string> flags;
  if (summary.from_upstream_source) flags.push_back("from-upstream-source");
  if (summary.human_data) flags.push_back("human-data");
  if (summary.no_consent) flags.push_back("no-consent");
  if (summary.unmanaged) flags.push_back("unmanaged");
  if (summary.human_labeled) flags.push_back("human-labeled");
  nutrition.items.push_back(
      NoteItem{"Summary flags: " + (flags.empty() ? "none" : join_list(flags))});
  section.subsections.push_back(std::move(nutrition));

  Subsection characteristics{"Model Characteristics", {}};
  characteristics.items = {
      field("model.model_meta.architecture", "Architecture",
            d.model.model_meta.architecture),
      field("model.model_meta.parameter_count", "Parameters",
            fmt::format("{}", d.model.model_meta.parameter_count)),
      field("model.model_meta.input_shape", "Input shape",
            d.model.model_meta.input_shape),
      field("model.model_meta.output_schema", "Output schema",
            d.model.model_meta.output_schema),
  };
  section.subsections.push_back(std::move(characteristics));

  Subsection performance{"Model Performance", {}};
  performance.items = {
      field("model.roc.auc", "ROC AUC", prob(d.model.roc.auc)),
      field("model.chosen_threshold", "Chosen threshold",
            prob(d.model.chosen_threshold)),
      field("model.accuracy", "Accuracy", prob(d.model.accuracy)),
      field("model.precision", "Precision", prob(d.model.precision)),
      field("model.recall", "Recall", prob(d.model.recall)),
      field("model.f1", "F1 score", prob(d.model.f1)),
  };
  TableItem confusion;
  confusion.paths = {"model.confusion"};
  confusion.header = {"", "Predicted positive", "Predicted negative"};
  confusion.rows = {
      {"Actual positive", fmt::format("{}", d.model.confusion.tp),
       fmt::format("{}", d.model.confusion.fn)},
      {"Actual negative", fmt::format("{}", d.model.confusion.fp),
       fmt::format("{}", d.model.confusion.tn)},
  };
  performance.items.push_back(std::move(confusion));
  performance.items.push_back(
      NoteItem{"Confusion matrix at the chosen threshold."});

  TableItem roc;
  roc.paths = {"model.roc.points"};
  roc.csv_note = "Full data: " + stem + ".roc.csv";
  roc.header = {"FPR", "TPR"};
  for (const auto& pt : d.model.roc.points)
    roc.rows.push_back({prob(pt.fpr), prob(pt.tpr)});
  performance.items.push_back(std::move(roc));

  TableItem pr;
  pr.paths = {"model.pr.points"};
  pr.csv_note = "Full data: " + stem + ".pr.csv";
  pr.header = {"Recall", "Precision"};
  for (const auto& pt : d.model.pr.points)
    pr.rows.push_back({prob(pt.recall), prob(pt.precision)});
  performance.items.push_back(std::move(pr));

  section.subsections.push_back(std::move(performance));
  return section;
}

TableItem strata_table(
    const std::string& path, const std::string& csv_note,
    const std::string& key_header,
    const std::vector<std::pair<std::string, study::StratumStats>>& strata) {
  TableItem table;
  table.paths = {path};
  table.csv_note = csv_note;
  table.header = {key_header, "Mean confidence", "Std dev", "n"};
  for (const auto& [key, stats] : strata) {
    table.rows.push_back({key, prob(stats.mean_confidence),
                          prob(stats.stddev),
                          fmt::format("{}", stats.n)});
  }
  return table;
}

Section mlsensor_section(const bundle::Datasheet& d, const std::string& stem) {
  Section section{std::string(kSectionTitles[3]), {}};

  Subsection environmental{"Environmental Impact", {}};
  environmental.items = {
      field("footprint.embodied_total", "Embodied carbon",
            kg(d.footprint.embodied_total)),
      field("footprint.transport_kg", "Transport", kg(d.footprint.transport_kg)),
      field("footprint.training_kg", "Model training",
            kg(d.footprint.training_kg)),
      field("footprint.operational_kg", "Operational (lifetime)",
            kg(d.footprint.operational_kg)),
      field("footprint.total_kg", "Total carbon footprint",
            kg(d.footprint.total_kg)),
  };
  TableItem breakdown;
  breakdown.paths = {"footprint.embodied_by_category"};
  breakdown.csv_note = "Full data: " + stem + ".footprint.csv";
  breakdown.header = {"Component", "kg CO2-eq", "Share"};
  for (const auto& row : footprint::footprint_breakdown_table(d.footprint)) {
    breakdown.rows.push_back({row.label, fmt::format("{:.2f}", row.kg),
                              fmt::format("{:.2f}%", row.percent)});
  }
  environmental.items.push_back(std::move(breakdown));
  section.subsections.push_back(std::move(environmental));

  if (!d.study) {
    Subsection placeholder{"", {}};
    placeholder.items.push_back(
        field("", "End-to-End Performance Analysis", "not provided"));
    section.subsections.push_back(std::move(placeholder));
    return section;
  }

  const auto& s = *d.study;
  Subsection study_sub{"End-to-End Performance Analysis", {}};
  study_sub.items.push_back(strata_table(
      "study.by_lighting", "Full data: " + stem + ".study_lighting.csv",
      "Lighting", s.by_lighting));
  study_sub.items.push_back(strata_table(
      "study.by_distance", "Full data: " + stem + ".study_distance.csv",
      "Distance (m)", s.by_distance));
  study_sub.items.push_back(strata_table(
      "study.by_gender", "Full data: " + stem + ".study_gender.csv", "Gender",
      s.by_gender));
  study_sub.items.push_back(strata_table(
      "study.by_skintone", "Full data: " + stem + ".study_skintone.csv",
      "Skin tone", s.by_skintone));

  TableItem sensors;
  sensors.paths = {"study.per_sensor"};
  sensors.header = {"Sensor", "Mean confidence"};
  for (const auto& [sid, mean] : s.per_sensor)
    sensors.rows.push_back({sid, prob(mean)});
  study_sub.items.push_back(std::move(sensors));

  study_sub.items.push_back(
      field("study.demographics.percent_male", "Male participants",
            pct1(s.demographics.percent_male)));
  study_sub.items.push_back(
      field("study.demographics.percent_female", "Female participants",
            pct1(s.demographics.percent_female)));
  study_sub.items.push_back(
      field("study.demographics.percent_light", "Light skin tone (MST 0-4)",
            pct1(s.demographics.percent_light)));
  study_sub.items.push_back(
      field("study.demographics.percent_medium", "Medium skin tone (MST 5-7)",
            pct1(s.demographics.percent_medium)));
  study_sub.items.push_back(
      field("study.demographics.percent_dark", "Dark skin tone (MST 8-10)",
            pct1(s.demographics.percent_dark)));

  try {
    auto gaps = study::bias_gaps(s);
    TableItem gap_table;
    gap_table.header = {"Dimension", "Max stratum gap"};
    for (const auto& [name, gap] : gaps)
      gap_table.rows.push_back({name, prob(gap)});
    study_sub.items.push_back(std::move(gap_table));
  } catch (const DomainError&) {
    // Fewer than two strata in some dimension; the gap table is derived
    // presentation and is simply omitted.
  }

  section.subsections.push_back(std::move(study_sub));
  return section;
}

}  // namespace

Document build_document(const bundle::Datasheet& d) {
  Document doc;
  doc.title = d.manifest.name + " ML Sensor Datasheet";
  doc.preamble = {
      field("generated_at", "Generated at", d.generated_at),
      field("tool_version", "Tool version", d.tool_version),
  };
  std::string stem = file_stem(d);
  doc.sections.push_back(standard_section(d));
  doc.sections.push_back(iot_section(d));
  doc.sections.push_back(ai_section(d, stem));
  doc.sections.push_back(mlsensor_section(d, stem));
  return doc;
}

namespace {

std::string md_cell(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '|') out += "\\|";
    else out.push_back(c);
  }
  return out;
}

void md_table(std::string& out, const TableItem& table) {
  out += "|";
  for (const auto& h : table.header) out += " " + md_cell(h) + " |";
  out += "\n|";
  for (std::size_t i = 0; i < table.header.size(); ++i) out += " --- |";
  for (const auto& row : table.rows) {
    out += "\n|";
    for (const auto& cell : row) out += " " + md_cell(cell) + " |";
  }
}

}  // namespace

std::string render_markdown(const Document& doc) {
  std::vector<std::string> blocks;
  blocks.push_back("# " + doc.title);

  std::string preamble;
  for (const auto& f : doc.preamble) {
    if (!preamble.empty()) preamble += "\n";
    preamble += f.label + ": " + f.value;
  }
  if (!preamble.empty()) blocks.push_back(std::move(preamble));

  for (const auto& section : doc.sections) {
    blocks.push_back("## " + section.title);
    for (const auto& sub : section.subsections) {
      if (!sub.title.empty()) blocks.push_back("### " + sub.title);
      std::string field_run;
      auto flush = [&] {
        if (!field_run.empty()) {
          blocks.push_back(std::move(field_run));
          field_run.clear();
        }
      };
      for (const auto& item : sub.items) {
        if (const auto* f = std::get_if<FieldItem>(&item)) {
          if (!field_run.empty()) field_run += "\n";
          field_run += f->label + ": " + f->value;
        } else if (const auto* t = std::get_if<TableItem>(&item)) {
          flush();
          std::string table;
          md_table(table, *t);
          blocks.push_back(std::move(table));
          if (!t->csv_note.empty()) blocks.push_back(t->csv_note);
        } else if (const auto* note = std::get_if<NoteItem>(&item)) {
          flush();
          blocks.push_back(note->text);
        }
      }
      flush();
    }
  }

  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) out += "\n\n";
    out += blocks[i];
  }
  out += "\n";
  return out;
}

std::string render_html(const Document& doc) {
  std::string out;
  out += "<!doctype html>\n<html lang=\"en\">\n<head>\n";
  out += "<meta charset=\"utf-8\">\n";
  out += "<title>" + html_escape(doc.title) + "</title>\n";
  out += "<style>\n";
  out += "body { font-family: sans-serif; margin: 2rem auto; max-width: 60rem; "
         "padding: 0 1rem; }\n";
  out += "table { border-collapse: collapse; margin: 0.5rem 0; }\n";
  out += "th, td { border: 1px solid #999; padding: 0.25rem 0.5rem; "
         "text-align: left; }\n";
  out += ".csv-note, .note { color: #555; font-size: 0.9rem; }\n";
  out += "</style>\n</head>\n<body>\n";
  out += "<h1>" + html_escape(doc.title) + "</h1>\n";

  for (const auto& f : doc.preamble)
    out += "<p>" + html_escape(f.label) + ": " + html_escape(f.value) +
           "</p>\n";

  for (const auto& section : doc.sections) {
    out += "<h2 id=\"" + slugify(section.title) + "\">" +
           html_escape(section.title) + "</h2>\n";
    for (const auto& sub : section.subsections) {
      if (!sub.title.empty())
        out += "<h3 id=\"" + slugify(sub.title) + "\">" +
               html_escape(sub.title) + "</h3>\n";
      for (const auto& item : sub.items) {
        if (const auto* f = std::get_if<FieldItem>(&item)) {
          std::string value = f->path == "privacy_label.secondary_layer_url"
                                  ? "<a href=\"" + html_escape(f->value) +
                                        "\">" + html_escape(f->value) + "</a>"
                                  : html_escape(f->value);
          out += "<p>" + html_escape(f->label) + ": " + value + "</p>\n";
        } else if (const auto* t = std::get_if<TableItem>(&item)) {
          out += "<table>\n<thead>\n<tr>";
          for (const auto& h : t->header)
            out += "<th>" + html_escape(h) + "</th>";
          out += "</tr>\n</thead>\n<tbody>\n";
          for (const auto& row : t->rows) {
            out += "<tr>";
            for (const auto& cell : row)
              out += "<td>" + html_escape(cell) + "</td>";
            out += "</tr>\n";
          }
          out += "</tbody>\n</table>\n";
          if (!t->csv_note.empty())
            out += "<p class=\"csv-note\">" + html_escape(t->csv_note) +
                   "</p>\n";
        } else if (const auto* note = std::get_if<NoteItem>(&item)) {
          out += "<p class=\"note\">" + html_escape(note->text) + "</p>\n";
        }
      }
    }
  }

  out += "</body>\n</html>\n";
  return out;
}

std::string render_markdown(const bundle::Datasheet& d) {
  return render_markdown(build_document(d));
}

std::string render_html(const bundle::Datasheet& d) {
  return render_html(build_document(d));
}

std::vector<std::string> enumerate_field_paths(const bundle::Datasheet& d) {
  std::vector<std::string> paths = {
      "generated_at",
      "tool_version",
      "manifest.name",
      "manifest.description_plain",
      "manifest.description_technical",
      "manifest.features",
      "manifest.use_cases",
      "manifest.dimensions_mm",
      "manifest.hardware.supply_voltage_min_v",
      "manifest.hardware.supply_voltage_max_v",
      "manifest.hardware.operating_current_ma",
      "manifest.hardware.processor",
      "manifest.hardware.memory_kb",
      "manifest.communication.bus",
      "manifest.communication.max_rate_kbps",
      "manifest.communication.connector",
      "manifest.communication.payload_schema",
      "manifest.compliance",
      "privacy_label.sensors_present",
      "privacy_label.data_stored_on_device",
      "privacy_label.data_transmitted_off_device",
      "privacy_label.security_mechanisms",
      "privacy_label.model_updateability",
      "privacy_label.secondary_layer_url",
      "nutrition_label.dataset_name",
      "nutrition_label.upstream_sources",
      "nutrition_label.source_category",
      "nutrition_label.license",
      "nutrition_label.modality",
      "nutrition_label.human_labeled",
      "nutrition_label.contains_human_data",
      "nutrition_label.consent_obtained",
      "nutrition_label.actively_managed",
      "model.model_meta.architecture",
      "model.model_meta.parameter_count",
      "model.model_meta.input_shape",
      "model.model_meta.output_schema",
      "model.roc.auc",
      "model.chosen_threshold",
      "model.accuracy",
      "model.precision",
      "model.recall",
      "model.f1",
      "model.confusion",
      "model.roc.points",
      "model.pr.points",
      "footprint.embodied_total",
      "footprint.transport_kg",
      "footprint.training_kg",
      "footprint.operational_kg",
      "footprint.total_kg",
      "footprint.embodied_by_category",
  };
  if (d.study) {
    paths.insert(paths.end(), {
        "study.by_lighting",
        "study.by_distance",
        "study.by_gender",
        "study.by_skintone",
        "study.per_sensor",
        "study.demographics.percent_male",
        "study.demographics.percent_female",
        "study.demographics.percent_light",
        "study.demographics.percent_medium",
        "study.demographics.percent_dark",
    });
  }
  return paths;
}

std::vector<std::string> collect_paths(const Document& doc) {
  std::vector<std::string> paths;
  for (const auto& f : doc.preamble)
    if (!f.path.empty()) paths.push_back(f.path);
  for (const auto& section : doc.sections) {
    for (const auto& sub : section.subsections) {
      for (const auto& item : sub.items) {
        if (const auto* f = std::get_if<FieldItem>(&item)) {
          if (!f->path.empty()) paths.push_back(f->path);
        } else if (const auto* t = std::get_if<TableItem>(&item)) {
          for (const auto& p : t->paths) paths.push_back(p);
        }
      }
    }
  }
  return paths;
}

std::vector<Sidecar> sidecar_csvs(const bundle::Datasheet& d) {
  std::string stem = file_stem(d);
  std::vector<Sidecar> out;

  std::ostringstream roc;
  metrics::write_roc_csv(d.model.roc, roc);
  out.push_back({stem + ".roc.csv", roc.str()});

  std::ostringstream pr;
  metrics::write_pr_csv(d.model.pr, pr);
  out.push_back({stem + ".pr.csv", pr.str()});

  std::ostringstream fp;
  footprint::write_breakdown_csv(
      footprint::footprint_breakdown_table(d.footprint), fp);
  out.push_back({stem + ".footprint.csv", fp.str()});

  if (d.study) {
    const auto strata = {
        std::pair{"study_lighting", &d.study->by_lighting},
        std::pair{"study_distance", &d.study->by_distance},
        std::pair{"study_gender", &d.study->by_gender},
        std::pair{"study_skintone", &d.study->by_skintone},
    };
    for (const auto& [name, data] : strata) {
      std::ostringstream s;
      study::write_stratum_csv(*data, s);
      out.push_back({stem + "." + name + ".csv", s.str()});
    }
  }
  return out;
}

std::string file_stem(const bundle::Datasheet& d) {
  std::string stem;
  for (char c : d.manifest.name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
    stem.push_back(ok ? c : '-');
  }
  if (stem.empty()) stem = "datasheet";
  return stem;
}

std::string slugify(std::string_view heading) {
  std::string out;
  bool pending_dash = false;
  for (char c : heading) {
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
      if (pending_dash && !out.empty()) out.push_back('-');
      pending_dash = false;
      out.push_back(c);
    } else if (c >= 'A' && c <= 'Z') {
      if (pending_dash && !out.empty()) out.push_back('-');
      pending_dash = false;
      out.push_back(static_cast<char>(c - 'A' + 'a'));
    } else {
      pending_dash = true;
    }
  }
  return out;
}

std::string html_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace mlsds::render

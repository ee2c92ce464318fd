#include "mlsds/labels.hpp"

#include <fmt/format.h>

namespace mlsds::labels {

std::string_view to_string(SensorKind k) {
  switch (k) {
    case SensorKind::camera: return "camera";
    case SensorKind::microphone: return "microphone";
    case SensorKind::imu: return "imu";
    case SensorKind::other: return "other";
  }
  return "other";
}

std::string_view to_string(CollectionMode m) {
  switch (m) {
    case CollectionMode::continuous: return "continuous";
    case CollectionMode::on_trigger: return "on_trigger";
    case CollectionMode::never: return "never";
  }
  return "never";
}

std::string_view to_string(Updateability u) {
  switch (u) {
    case Updateability::none: return "none";
    case Updateability::ota_automatic: return "ota_automatic";
    case Updateability::ota_user_approved: return "ota_user_approved";
  }
  return "none";
}

std::string_view to_string(SourceCategory c) {
  switch (c) {
    case SourceCategory::governmental: return "governmental";
    case SourceCategory::commercial: return "commercial";
    case SourceCategory::academic: return "academic";
    case SourceCategory::mixed: return "mixed";
  }
  return "mixed";
}

std::string_view to_string(Modality m) {
  switch (m) {
    case Modality::image: return "image";
    case Modality::audio: return "audio";
    case Modality::timeseries: return "timeseries";
    case Modality::text: return "text";
    case Modality::other: return "other";
  }
  return "other";
}

namespace {

SensorPresence read_sensor(const Json& value, const std::string& path) {
  ObjectReader r(value, path);
  SensorPresence s;
  std::string kind = r.require_string("kind");
  if (kind == "camera") {
    s.kind = SensorKind::camera;
  } else if (kind == "microphone") {
    s.kind = SensorKind::microphone;
  } else if (kind == "imu") {
    s.kind = SensorKind::imu;
  } else {
    s.kind = SensorKind::other;
    s.kind_other = kind;
  }
  std::string collection = r.require_string("collection");
  if (collection == "continuous") {
    s.collection = CollectionMode::continuous;
  } else if (collection == "on_trigger") {
    s.collection = CollectionMode::on_trigger;
  } else if (collection == "never") {
    s.collection = CollectionMode::never;
  } else {
    throw SchemaError(path + ".collection",
                      "expected continuous, on_trigger, or never, got \"" +
                          collection + "\"");
  }
  r.finish();
  return s;
}

}  // namespace

PrivacyLabel parse_privacy_label(const Json& value, const std::string& path) {
  ObjectReader r(value, path);
  PrivacyLabel label;
  const Json& sensors =
      as_array(r.require("sensors_present"), r.member_path("sensors_present"));
  for (std::size_t i = 0; i < sensors.size(); ++i) {
    label.sensors_present.push_back(read_sensor(
        sensors[i],
        fmt::format("{}[{}]", r.member_path("sensors_present"), i)));
  }
  label.data_stored_on_device = r.require_bool("data_stored_on_device");
  label.data_transmitted_off_device =
      r.require_bool("data_transmitted_off_device");
  label.security_mechanisms = r.require_string_array("security_mechanisms");
  std::string updateability = r.require_string("model_updateability");
  if (updateability == "none") {
    label.model_updateability = Updateability::none;
  } else if (updateability == "ota_automatic") {
    label.model_updateability = Updateability::ota_automatic;
  } else if (updateability == "ota_user_approved") {
    label.model_updateability = Updateability::ota_user_approved;
  } else {
    throw SchemaError(r.member_path("model_updateability"),
                      "expected none, ota_automatic, or ota_user_approved, "
                      "got \"" + updateability + "\"");
  }
  if (const Json* freq = r.optional("update_frequency"))
    label.update_frequency =
        as_string(*freq, r.member_path("update_frequency"));
  label.secondary_layer_url = r.require_string("secondary_layer_url");
  r.finish();
  return label;
}

NutritionLabel parse_nutrition_label(const Json& value,
                                     const std::string& path) {
  ObjectReader r(value, path);
  NutritionLabel label;
  label.dataset_name = r.require_string("dataset_name");
  label.upstream_sources = r.require_string_array("upstream_sources");
  std::string category = r.require_string("source_category");
  if (category == "governmental") {
    label.source_category = SourceCategory::governmental;
  } else if (category == "commercial") {
    label.source_category = SourceCategory::commercial;
  } else if (category == "academic") {
    label.source_category = SourceCategory::academic;
  } else if (category == "mixed") {
    label.source_category = SourceCategory::mixed;
  } else {
    throw SchemaError(r.member_path("source_category"),
                      "expected governmental, commercial, academic, or "
                      "mixed, got \"" + category + "\"");
  }
  label.license = r.require_string("license");
  std::string modality = r.require_string("modality");
  if (modality == "image") {
    label.modality = Modality::image;
  } else if (modality == "audio") {
    label.modality = Modality::audio;
  } else if (modality == "timeseries") {
    label.modality = Modality::timeseries;
  } else if (modality == "text") {
    label.modality = Modality::text;
  } else {
    label.modality = Modality::other;
    label.modality_other = modality;
  }
  label.human_labeled = r.require_bool("human_labeled");
  label.contains_human_data = r.require_bool("contains_human_data");
  if (const Json* consent = r.optional("consent_obtained"))
    label.consent_obtained =
        as_bool(*consent, r.member_path("consent_obtained"));
  label.actively_managed = r.require_bool("actively_managed");
  r.finish();
  return label;
}

ValidationReport validate_privacy_label(const PrivacyLabel& label) {
  ValidationReport report;
  if (label.secondary_layer_url.empty()) {
    report.add(Severity::error, "privacy_label.secondary_layer_url",
               "the primary layer must link to a secondary layer");
  }
  if (label.security_mechanisms.empty()) {
    if (label.data_transmitted_off_device) {
      report.add(Severity::warning, "privacy_label.security_mechanisms",
                 "off-device transmission without declared security "
                 "mechanisms");
    } else if (label.data_stored_on_device) {
      report.add(Severity::warning, "privacy_label.security_mechanisms",
                 "on-device storage without declared security mechanisms");
    }
  }
  return report;
}

ValidationReport validate_nutrition_label(const NutritionLabel& label) {
  ValidationReport report;
  if (!label.contains_human_data && label.consent_obtained.has_value()) {
    report.add(Severity::error, "nutrition_label.consent_obtained",
               "consent_obtained is only meaningful when the dataset "
               "contains human data");
  }
  if (label.contains_human_data && label.consent_obtained.has_value() &&
      !*label.consent_obtained) {
    report.add(Severity::warning, "nutrition_label.consent_obtained",
               "dataset contains human data obtained without consent");
  }
  if (!label.actively_managed) {
    report.add(Severity::warning, "nutrition_label.actively_managed",
               "dataset is not actively managed or updated");
  }
  return report;
}

LabelSummary summarize_label(const NutritionLabel& label) {
  LabelSummary summary;
  summary.from_upstream_source = !label.upstream_sources.empty();
  summary.human_data = label.contains_human_data;
  summary.no_consent = label.contains_human_data &&
                       label.consent_obtained.has_value() &&
                       !*label.consent_obtained;
  summary.unmanaged = !label.actively_managed;
  summary.human_labeled = label.human_labeled;
  return summary;
}

Json to_json(const PrivacyLabel& label) {
  Json sensors = Json::array();
  for (const auto& s : label.sensors_present) {
    sensors.push_back(
        {{"kind", s.kind == SensorKind::other
                      ? s.kind_other
                      : std::string(to_string(s.kind))},
         {"collection", std::string(to_string(s.collection))}});
  }
  Json out = Json{
      {"sensors_present", sensors},
      {"data_stored_on_device", label.data_stored_on_device},
      {"data_transmitted_off_device", label.data_transmitted_off_device},
      {"security_mechanisms", label.security_mechanisms},
      {"model_updateability",
       std::string(to_string(label.model_updateability))},
      {"secondary_layer_url", label.secondary_layer_url},
  };
  if (!label.update_frequency.empty())
    out["update_frequency"] = label.update_frequency;
  return out;
}

Json to_json(const NutritionLabel& label) {
  Json out = Json{
      {"dataset_name", label.dataset_name},
      {"upstream_sources", label.upstream_sources},
      {"source_category", std::string(to_string(label.source_category))},
      {"license", label.license},
      {"modality", label.modality == Modality::other
                       ? label.modality_other
                       : std::string(to_string(label.modality))},
      {"human_labeled", label.human_labeled},
      {"contains_human_data", label.contains_human_data},
      {"actively_managed", label.actively_managed},
  };
  if (label.consent_obtained) out["consent_obtained"] = *label.consent_obtained;
  return out;
}

}  // namespace mlsds::labels

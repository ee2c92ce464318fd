#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mlsds/json_util.hpp"
#include "mlsds/validation.hpp"

namespace mlsds::labels {

enum class SensorKind { camera, microphone, imu, other };
enum class CollectionMode { continuous, on_trigger, never };
enum class Updateability { none, ota_automatic, ota_user_approved };

struct SensorPresence {
  SensorKind kind = SensorKind::other;
  std::string kind_other;  // set when kind == other
  CollectionMode collection = CollectionMode::never;
};

// Two-layer consumer privacy label. The primary layer is the rendered
// summary; the secondary layer is reachable through the URL.
struct PrivacyLabel {
  std::vector<SensorPresence> sensors_present;
  bool data_stored_on_device = false;
  bool data_transmitted_off_device = false;
  std::vector<std::string> security_mechanisms;
  Updateability model_updateability = Updateability::none;
  std::string update_frequency;  // optional free text, e.g. "monthly"
  std::string secondary_layer_url;
};

enum class SourceCategory { governmental, commercial, academic, mixed };
enum class Modality { image, audio, timeseries, text, other };

struct NutritionLabel {
  std::string dataset_name;
  std::vector<std::string> upstream_sources;
  SourceCategory source_category = SourceCategory::mixed;
  std::string license;
  Modality modality = Modality::other;
  std::string modality_other;  // set when modality == other
  bool human_labeled = false;
  bool contains_human_data = false;
  std::optional<bool> consent_obtained;  // only meaningful for human data
  bool actively_managed = false;
};

// Badge flags summarizing a nutrition label for rendering.
struct LabelSummary {
  bool from_upstream_source = false;
  bool human_data = false;
  bool no_consent = false;  // human data with consent explicitly absent
  bool unmanaged = false;
  bool human_labeled = false;
};

PrivacyLabel parse_privacy_label(const Json& value, const std::string& path);
NutritionLabel parse_nutrition_label(const Json& value,
                                     const std::string& path);

ValidationReport validate_privacy_label(const PrivacyLabel& label);
ValidationReport validate_nutrition_label(const NutritionLabel& label);

LabelSummary summarize_label(const NutritionLabel& label);

Json to_json(const PrivacyLabel& label);
Json to_json(const NutritionLabel& label);

std::string_view to_string(SensorKind k);
std::string_view to_string(CollectionMode m);
std::string_view to_string(Updateability u);
std::string_view to_string(SourceCategory c);
std::string_view to_string(Modality m);

}  // namespace mlsds::labels

#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mlsds/json_util.hpp"

namespace mlsds::study {

enum class Gender { male, female, other_unspecified };
enum class SkinToneBucket { light, medium, dark };
enum class LightingLevel { off, low, medium, high };

std::string_view to_string(Gender g);
std::string_view to_string(SkinToneBucket b);
std::string_view to_string(LightingLevel l);

struct Participant {
  std::string id;
  Gender gender = Gender::other_unspecified;
  int mst = 0;  // Monk Skin Tone, [0,10]
};

struct Reading {
  std::string participant_id;
  std::string sensor_id;
  double lighting_lux = 0.0;
  double distance_m = 0.0;
  double confidence = 0.0;  // in [0,1]
};

// 0-4 light, 5-7 medium, 8-10 dark. DomainError outside [0,10].
SkinToneBucket mst_bucket(int mst);

// Nearest of the nominal levels {0, 208, 584, 1149} lux; ties go to the
// lower level.
LightingLevel lighting_level(double lux);

// Arithmetic mean; DomainError on an empty group.
double mean_confidence(std::span<const double> values);

// mean_confidence averages the stratum's aggregation units (group means
// for lighting/distance, per-participant means for gender/skin tone);
// stddev is the sample standard deviation over those units, 0 for a single
// unit. n counts raw readings for lighting/distance strata and
// participants for gender/skin-tone strata, so each dimension's n column
// sums to the corresponding population size.
struct StratumStats {
  double mean_confidence = 0.0;
  double stddev = 0.0;
  std::int64_t n = 0;
};

struct Demographics {
  double percent_male = 0.0;
  double percent_female = 0.0;
  double percent_light = 0.0;
  double percent_medium = 0.0;
  double percent_dark = 0.0;
};

// Strata are kept in a fixed display order and only populated strata are
// present. Lighting/distance strata aggregate per-(participant, sensor,
// condition) reading means; gender/skin-tone strata aggregate per-
// participant means of those group means.
struct StudyReport {
  std::vector<std::pair<std::string, StratumStats>> by_lighting;
  std::vector<std::pair<std::string, StratumStats>> by_distance;
  std::vector<std::pair<std::string, StratumStats>> by_gender;
  std::vector<std::pair<std::string, StratumStats>> by_skintone;
  std::vector<std::pair<std::string, double>> per_sensor;
  Demographics demographics;
};

struct StudyOptions {
  std::vector<double> distances = {1.0, 3.0, 5.0};
};

// DomainError on a reading referencing an unknown participant or on an
// empty roster. A distance outside options.distances draws a warning and
// the reading is binned under its literal value.
StudyReport build_study_report(std::span<const Participant> participants,
                               std::span<const Reading> readings,
                               ValidationReport& findings,
                               const StudyOptions& options = {});

// Max pairwise stratum-mean gap per dimension, in the fixed order
// lighting, distance, gender, skintone. DomainError when any dimension has
// fewer than two populated strata.
std::vector<std::pair<std::string, double>> bias_gaps(const StudyReport& r);

// CSV with header `id,gender,mst`.
std::vector<Participant> read_participants_csv(std::istream& in,
                                               const std::string& source_name);
// CSV with header `participant_id,sensor_id,lighting_lux,distance_m,confidence`.
std::vector<Reading> read_readings_csv(std::istream& in,
                                       const std::string& source_name);

Json to_json(const StudyReport& report);
void write_stratum_csv(
    const std::vector<std::pair<std::string, StratumStats>>& strata,
    std::ostream& out);

}  // namespace mlsds::study

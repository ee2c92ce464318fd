#include "mlsds/study.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include <fmt/format.h>

#include "mlsds/csv.hpp"

namespace mlsds::study {

std::string_view to_string(Gender g) {
  switch (g) {
    case Gender::male: return "male";
    case Gender::female: return "female";
    case Gender::other_unspecified: return "other/unspecified";
  }
  return "other/unspecified";
}

std::string_view to_string(SkinToneBucket b) {
  switch (b) {
    case SkinToneBucket::light: return "light";
    case SkinToneBucket::medium: return "medium";
    case SkinToneBucket::dark: return "dark";
  }
  return "dark";
}

std::string_view to_string(LightingLevel l) {
  switch (l) {
    case LightingLevel::off: return "off";
    case LightingLevel::low: return "low";
    case LightingLevel::medium: return "medium";
    case LightingLevel::high: return "high";
  }
  return "high";
}

SkinToneBucket mst_bucket(int mst) {
  if (mst < 0 || mst > 10)
    throw DomainError("mst", "expected a Monk Skin Tone value in [0,10]");
  if (mst <= 4) return SkinToneBucket::light;
  if (mst <= 7) return SkinToneBucket::medium;
  return SkinToneBucket::dark;
}

LightingLevel lighting_level(double lux) {
  // Nominal levels 0, 208, 584, 1149; boundaries are the midpoints, with
  // an exact midpoint assigned to the lower level.
  if (lux <= 104.0) return LightingLevel::off;
  if (lux <= 396.0) return LightingLevel::low;
  if (lux <= 866.5) return LightingLevel::medium;
  return LightingLevel::high;
}

double mean_confidence(std::span<const double> values) {
  if (values.empty())
    throw DomainError("readings", "cannot average an empty group");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

namespace {

double sample_stddev(const std::vector<double>& values) {
  if (values.size() <= 1) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

StratumStats make_stats(const std::vector<double>& units, std::int64_t n) {
  StratumStats stats;
  stats.mean_confidence = mean_confidence(units);
  stats.stddev = sample_stddev(units);
  stats.n = n;
  return stats;
}

std::string distance_key(double distance) {
  return fmt::format("{}", distance);
}

}  // namespace

StudyReport build_study_report(std::span<const Participant> participants,
                               std::span<const Reading> readings,
                               ValidationReport& findings,
                               const StudyOptions& options) {
  if (participants.empty())
    throw DomainError("study.participants", "empty participant roster");

  std::map<std::string, const Participant*> roster;
  for (std::size_t i = 0; i < participants.size(); ++i) {
    auto [it, inserted] =
        roster.emplace(participants[i].id, &participants[i]);
    if (!inserted)
      throw DomainError(fmt::format("study.participants[{}].id", i),
                        "duplicate participant id \"" + participants[i].id +
                            "\"");
    mst_bucket(participants[i].mst);  // range check
  }

  // Group readings by participant, sensor, lighting level, and distance;
  // strata aggregate the per-group means.
  struct Acc {
    double sum = 0.0;
    std::int64_t count = 0;
  };
  using GroupKey = std::tuple<std::string, std::string, int, double>;
  std::map<GroupKey, Acc> groups;
  std::map<int, std::int64_t> lighting_readings;
  std::map<std::string, std::int64_t> distance_readings;
  std::set<double> warned_distances;

  for (std::size_t i = 0; i < readings.size(); ++i) {
    const Reading& r = readings[i];
    std::string base = fmt::format("study.readings[{}]", i);
    if (!roster.contains(r.participant_id))
      throw DomainError(base + ".participant_id",
                        "unknown participant \"" + r.participant_id + "\"");
    if (!(r.confidence >= 0.0 && r.confidence <= 1.0))
      throw DomainError(base + ".confidence", "expected a value in [0,1]");
    if (r.lighting_lux < 0.0)
      throw DomainError(base + ".lighting_lux", "expected a nonnegative value");
    if (!(r.distance_m > 0.0))
      throw DomainError(base + ".distance_m", "expected a positive value");
    if (std::find(options.distances.begin(), options.distances.end(),
                  r.distance_m) == options.distances.end() &&
        warned_distances.insert(r.distance_m).second) {
      findings.add(Severity::warning, base + ".distance_m",
                   fmt::format("distance {} m is not in the configured set; "
                               "binned under its literal value",
                               r.distance_m));
    }
    int level = static_cast<int>(lighting_level(r.lighting_lux));
    Acc& acc = groups[{r.participant_id, r.sensor_id, level, r.distance_m}];
    acc.sum += r.confidence;
    acc.count += 1;
    lighting_readings[level] += 1;
    distance_readings[distance_key(r.distance_m)] += 1;
  }

  std::map<int, std::vector<double>> lighting_units;
  std::map<std::string, std::vector<double>> distance_units;
  std::map<std::string, std::vector<double>> participant_units;
  std::map<std::string, std::vector<double>> sensor_units;
  std::map<std::string, double> distance_sort_key;

  for (const auto& [key, acc] : groups) {
    const auto& [pid, sid, level, distance] = key;
    double mean = acc.sum / static_cast<double>(acc.count);
    lighting_units[level].push_back(mean);
    std::string dkey = distance_key(distance);
    distance_units[dkey].push_back(mean);
    distance_sort_key[dkey] = distance;
    participant_units[pid].push_back(mean);
    sensor_units[sid].push_back(mean);
  }

  StudyReport report;
  for (const auto& [level, units] : lighting_units) {
    report.by_lighting.emplace_back(
        std::string(to_string(static_cast<LightingLevel>(level))),
        make_stats(units, lighting_readings.at(level)));
  }

  std::vector<std::string> dkeys;
  for (const auto& [dkey, units] : distance_units) dkeys.push_back(dkey);
  std::sort(dkeys.begin(), dkeys.end(),
            [&](const std::string& a, const std::string& b) {
              return distance_sort_key.at(a) < distance_sort_key.at(b);
            });
  for (const auto& dkey : dkeys) {
    report.by_distance.emplace_back(
        dkey, make_stats(distance_units.at(dkey), distance_readings.at(dkey)));
  }

  std::map<int, std::vector<double>> gender_units;
  std::map<int, std::int64_t> gender_counts;
  std::map<int, std::vector<double>> skintone_units;
  std::map<int, std::int64_t> skintone_counts;
  for (const auto& [pid, participant] : roster) {
    auto it = participant_units.find(pid);
    if (it == participant_units.end()) {
      findings.add(Severity::warning, "study.participants",
                   "participant \"" + pid +
                       "\" has no readings and is excluded from the strata");
      continue;
    }
    double pmean = mean_confidence(it->second);
    int g = static_cast<int>(participant->gender);
    int s = static_cast<int>(mst_bucket(participant->mst));
    gender_units[g].push_back(pmean);
    gender_counts[g] += 1;
    skintone_units[s].push_back(pmean);
    skintone_counts[s] += 1;
  }
  for (const auto& [g, units] : gender_units) {
    report.by_gender.emplace_back(
        std::string(to_string(static_cast<Gender>(g))),
        make_stats(units, gender_counts.at(g)));
  }
  for (const auto& [s, units] : skintone_units) {
    report.by_skintone.emplace_back(
        std::string(to_string(static_cast<SkinToneBucket>(s))),
        make_stats(units, skintone_counts.at(s)));
  }

  for (const auto& [sid, units] : sensor_units)
    report.per_sensor.emplace_back(sid, mean_confidence(units));

  std::int64_t total = static_cast<std::int64_t>(participants.size());
  std::int64_t male = 0;
  std::int64_t female = 0;
  std::int64_t tone[3] = {0, 0, 0};
  for (const auto& p : participants) {
    if (p.gender == Gender::male) male++;
    if (p.gender == Gender::female) female++;
    tone[static_cast<int>(mst_bucket(p.mst))]++;
  }
  double scale = 100.0 / static_cast<double>(total);
  report.demographics.percent_male = scale * static_cast<double>(male);
  report.demographics.percent_female = scale * static_cast<double>(female);
  report.demographics.percent_light = scale * static_cast<double>(tone[0]);
  report.demographics.percent_medium = scale * static_cast<double>(tone[1]);
  report.demographics.percent_dark = scale * static_cast<double>(tone[2]);
  return report;
}

std::vector<std::pair<std::string, double>> bias_gaps(const StudyReport& r) {
  std::vector<std::pair<std::string, double>> gaps;
  const std::pair<std::string,
                  const std::vector<std::pair<std::string, StratumStats>>*>
      dims[] = {{"lighting", &r.by_lighting},
                {"distance", &r.by_distance},
                {"gender", &r.by_gender},
                {"skintone", &r.by_skintone}};
  for (const auto& [name, strata] : dims) {
    if (strata->size() < 2)
      throw DomainError("study.by_" + name,
                        "fewer than two populated strata");
    double lo = strata->front().second.mean_confidence;
    double hi = lo;
    for (const auto& [key, stats] : *strata) {
      lo = std::min(lo, stats.mean_confidence);
      hi = std::max(hi, stats.mean_confidence);
    }
    gaps.emplace_back(name, hi - lo);
  }
  return gaps;
}

std::vector<Participant> read_participants_csv(std::istream& in,
                                               const std::string& source_name) {
  auto rows = read_csv(in, source_name, {"id", "gender", "mst"});
  std::vector<Participant> participants;
  participants.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string base = fmt::format("study.participants[{}]", i);
    std::string where = fmt::format(" ({}:{})", source_name, rows[i].line);
    Participant p;
    p.id = rows[i].fields[0];
    if (p.id.empty())
      throw SchemaError(base + ".id", "expected a nonempty id" + where);
    const std::string& gender = rows[i].fields[1];
    if (gender == "male")
      p.gender = Gender::male;
    else if (gender == "female")
      p.gender = Gender::female;
    else if (gender == "other" || gender == "unspecified" ||
             gender == "other/unspecified")
      p.gender = Gender::other_unspecified;
    else
      throw SchemaError(base + ".gender",
                        "expected male, female, or other/unspecified, got \"" +
                            gender + "\"" + where);
    p.mst = static_cast<int>(csv_int(rows[i].fields[2], base + ".mst"));
    if (p.mst < 0 || p.mst > 10)
      throw DomainError(base + ".mst",
                        "expected a Monk Skin Tone value in [0,10]" + where);
    participants.push_back(std::move(p));
  }
  return participants;
}

std::vector<Reading> read_readings_csv(std::istream& in,
                                       const std::string& source_name) {
  auto rows = read_csv(
      in, source_name,
      {"participant_id", "sensor_id", "lighting_lux", "distance_m",
       "confidence"});
  std::vector<Reading> readings;
  readings.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string base = fmt::format("study.readings[{}]", i);
    std::string where = fmt::format(" ({}:{})", source_name, rows[i].line);
    Reading r;
    r.participant_id = rows[i].fields[0];
    r.sensor_id = rows[i].fields[1];
    r.lighting_lux = csv_number(rows[i].fields[2], base + ".lighting_lux");
    r.distance_m = csv_number(rows[i].fields[3], base + ".distance_m");
    r.confidence = csv_number(rows[i].fields[4], base + ".confidence");
    if (r.lighting_lux < 0.0)
      throw DomainError(base + ".lighting_lux",
                        "expected a nonnegative value" + where);
    if (!(r.distance_m > 0.0))
      throw DomainError(base + ".distance_m",
                        "expected a positive value" + where);
    if (!(r.confidence >= 0.0 && r.confidence <= 1.0))
      throw DomainError(base + ".confidence",
                        "expected a value in [0,1]" + where);
    readings.push_back(std::move(r));
  }
  return readings;
}

Json to_json(const StudyReport& report) {
  auto strata_json =
      [](const std::vector<std::pair<std::string, StratumStats>>& strata) {
        Json obj = Json::object();
        for (const auto& [key, stats] : strata) {
          obj[key] = {{"mean_confidence", stats.mean_confidence},
                      {"stddev", stats.stddev},
                      {"n", stats.n}};
        }
        return obj;
      };
  Json sensors = Json::object();
  for (const auto& [sid, mean] : report.per_sensor) sensors[sid] = mean;
  return Json{
      {"by_lighting", strata_json(report.by_lighting)},
      {"by_distance", strata_json(report.by_distance)},
      {"by_gender", strata_json(report.by_gender)},
      {"by_skintone", strata_json(report.by_skintone)},
      {"per_sensor", sensors},
      {"demographics",
       {{"percent_male", report.demographics.percent_male},
        {"percent_female", report.demographics.percent_female},
        {"percent_light", report.demographics.percent_light},
        {"percent_medium", report.demographics.percent_medium},
        {"percent_dark", report.demographics.percent_dark}}},
  };
}

void write_stratum_csv(
    const std::vector<std::pair<std::string, StratumStats>>& strata,
    std::ostream& out) {
  out << "stratum,mean_confidence,stddev,n\n";
  for (const auto& [key, stats] : strata)
    out << fmt::format("{},{},{},{}\n", key, stats.mean_confidence,
                       stats.stddev, stats.n);
}

}  // namespace mlsds::study

#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "mlsds/json_util.hpp"

namespace mlsds::footprint {

enum class Category {
  processing,
  sensing,
  power_supply,
  memory,
  pcb,
  passives,
  other,
};

struct BomEntry {
  Category category = Category::other;
  std::string other_label;  // set when category == other
  std::string name;
  double embodied_kg_co2e = 0.0;
};

// Canonical map key: the category name, or the free-form label for `other`.
std::string category_key(const BomEntry& entry);
Category category_from_string(const std::string& text);

struct UsageProfile {
  double average_power_w = 0.0;
  double lifetime_hours = 0.0;
  double grid_intensity_kg_per_kwh = 0.0;
};

struct FootprintReport {
  std::map<std::string, double> embodied_by_category;
  double embodied_total = 0.0;
  double transport_kg = 0.0;
  double training_kg = 0.0;
  double operational_kg = 0.0;
  double total_kg = 0.0;
};

// average_power_w * lifetime_hours / 1000 * grid_intensity.
double operational_carbon(const UsageProfile& usage);

// kWh * intensity; for callers holding a training energy figure instead of
// a precomputed kg value.
double carbon_from_energy(double kwh, double grid_intensity_kg_per_kwh);

// DomainError on any negative input. No rounding inside the accumulation.
FootprintReport compute_footprint(std::span<const BomEntry> bom,
                                  double transport_kg, double training_kg,
                                  const UsageProfile& usage);

struct BreakdownRow {
  std::string label;  // category key or one of transport/training/operational
  double kg = 0.0;
  double percent = 0.0;  // already a multiple of 0.01; rows sum to 100.00
};

// Rows sorted descending by kg (label ascending on equal kg); percents are
// apportioned in hundredths by largest remainder so they sum to exactly
// 100.00, or all zero when total_kg is 0.
std::vector<BreakdownRow> footprint_breakdown_table(const FootprintReport& r);

// CSV with header `category,name,embodied_kg_co2e`.
std::vector<BomEntry> read_bom_csv(std::istream& in,
                                   const std::string& source_name);

Json to_json(const FootprintReport& report);
void write_breakdown_csv(const std::vector<BreakdownRow>& rows,
                         std::ostream& out);

}  // namespace mlsds::footprint

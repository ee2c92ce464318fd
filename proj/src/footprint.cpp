#include "mlsds/footprint.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include <fmt/format.h>

#include "mlsds/csv.hpp"

namespace mlsds::footprint {

namespace {

constexpr std::pair<Category, std::string_view> kCategoryNames[] = {
    {Category::processing, "processing"},
    {Category::sensing, "sensing"},
    {Category::power_supply, "power_supply"},
    {Category::memory, "memory"},
    {Category::pcb, "pcb"},
    {Category::passives, "passives"},
};

}  // namespace

std::string category_key(const BomEntry& entry) {
  for (auto [cat, name] : kCategoryNames)
    if (cat == entry.category) return std::string(name);
  return entry.other_label;
}

Category category_from_string(const std::string& text) {
  for (auto [cat, name] : kCategoryNames)
    if (name == text) return cat;
  return Category::other;
}

double operational_carbon(const UsageProfile& usage) {
  return usage.average_power_w * usage.lifetime_hours / 1000.0 *
         usage.grid_intensity_kg_per_kwh;
}

double carbon_from_energy(double kwh, double grid_intensity_kg_per_kwh) {
  return kwh * grid_intensity_kg_per_kwh;
}

FootprintReport compute_footprint(std::span<const BomEntry> bom,
                                  double transport_kg, double training_kg,
                                  const UsageProfile& usage) {
  if (transport_kg < 0.0)
    throw DomainError("footprint.transport_kg", "expected a nonnegative value");
  if (training_kg < 0.0)
    throw DomainError("footprint.training_kg", "expected a nonnegative value");
  if (usage.average_power_w < 0.0 || usage.lifetime_hours < 0.0 ||
      usage.grid_intensity_kg_per_kwh < 0.0)
    throw DomainError("footprint.usage", "expected nonnegative values");

  FootprintReport report;
  std::map<std::string, std::vector<double>> grouped;
  for (std::size_t i = 0; i < bom.size(); ++i) {
    if (bom[i].embodied_kg_co2e < 0.0)
      throw DomainError(
          fmt::format("footprint.bom[{}].embodied_kg_co2e", i),
          "expected a nonnegative value");
    grouped[category_key(bom[i])].push_back(bom[i].embodied_kg_co2e);
  }
  // Summation order is canonicalized so reordering BOM rows cannot move
  // the totals by an ulp.
  for (auto& [key, values] : grouped) {
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) sum += v;
    report.embodied_by_category[key] = sum;
    report.embodied_total += sum;
  }
  report.transport_kg = transport_kg;
  report.training_kg = training_kg;
  report.operational_kg = operational_carbon(usage);
  report.total_kg = report.embodied_total + report.transport_kg +
                    report.training_kg + report.operational_kg;
  return report;
}

std::vector<BreakdownRow> footprint_breakdown_table(const FootprintReport& r) {
  std::vector<BreakdownRow> rows;
  for (const auto& [key, kg] : r.embodied_by_category)
    rows.push_back({key, kg, 0.0});
  rows.push_back({"transport", r.transport_kg, 0.0});
  rows.push_back({"training", r.training_kg, 0.0});
  rows.push_back({"operational", r.operational_kg, 0.0});

  std::sort(rows.begin(), rows.end(),
            [](const BreakdownRow& a, const BreakdownRow& b) {
              if (a.kg != b.kg) return a.kg > b.kg;
              return a.label < b.label;
            });

  if (r.total_kg <= 0.0) return rows;

  // Percents in hundredths, apportioned by largest remainder so the
  // rounded column sums to exactly 100.00.
  std::vector<double> exact(rows.size());
  std::vector<std::int64_t> hundredths(rows.size());
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    exact[i] = rows[i].kg / r.total_kg * 10000.0;
    hundredths[i] = static_cast<std::int64_t>(std::floor(exact[i]));
    assigned += hundredths[i];
  }
  std::int64_t remainder = 10000 - assigned;
  std::vector<std::size_t> order(rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     double fa = exact[a] - std::floor(exact[a]);
                     double fb = exact[b] - std::floor(exact[b]);
                     return fa > fb;
                   });
  for (std::int64_t k = 0; k < remainder; ++k)
    hundredths[order[k % order.size()]]++;
  for (std::size_t i = 0; i < rows.size(); ++i)
    rows[i].percent = static_cast<double>(hundredths[i]) / 100.0;
  return rows;
}

std::vector<BomEntry> read_bom_csv(std::istream& in,
                                   const std::string& source_name) {
  auto rows = read_csv(in, source_name,
                       {"category", "name", "embodied_kg_co2e"});
  std::vector<BomEntry> bom;
  bom.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    BomEntry entry;
    entry.category = category_from_string(rows[i].fields[0]);
    if (entry.category == Category::other) entry.other_label = rows[i].fields[0];
    entry.name = rows[i].fields[1];
    std::string base = fmt::format("footprint.bom[{}]", i);
    entry.embodied_kg_co2e =
        csv_number(rows[i].fields[2], base + ".embodied_kg_co2e");
    if (entry.embodied_kg_co2e < 0.0)
      throw DomainError(base + ".embodied_kg_co2e",
                        fmt::format("expected a nonnegative value ({}:{})",
                                    source_name, rows[i].line));
    bom.push_back(std::move(entry));
  }
  return bom;
}

Json to_json(const FootprintReport& report) {
  Json categories = Json::object();
  for (const auto& [key, kg] : report.embodied_by_category)
    categories[key] = kg;
  return Json{
      {"embodied_by_category", categories},
      {"embodied_total", report.embodied_total},
      {"transport_kg", report.transport_kg},
      {"training_kg", report.training_kg},
      {"operational_kg", report.operational_kg},
      {"total_kg", report.total_kg},
  };
}

void write_breakdown_csv(const std::vector<BreakdownRow>& rows,
                         std::ostream& out) {
  out << "label,kg_co2e,percent\n";
  for (const auto& row : rows)
    out << fmt::format("{},{},{:.2f}\n", row.label, row.kg, row.percent);
}

}  // namespace mlsds::footprint

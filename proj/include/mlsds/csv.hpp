#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "mlsds/validation.hpp"

namespace mlsds {

// Minimal strict CSV: comma separated, no quoting, fixed header. Every
// ingested format in this tool is a short fixed schema, so ragged rows and
// header mismatches are hard errors annotated with <source>:<line>.
struct CsvRow {
  std::vector<std::string> fields;
  int line;  // 1-based line number in the source
};

std::vector<CsvRow> read_csv(std::istream& in, const std::string& source_name,
                             const std::vector<std::string>& expected_header);

double csv_number(const std::string& field, const std::string& path);
std::int64_t csv_int(const std::string& field, const std::string& path);

}  // namespace mlsds

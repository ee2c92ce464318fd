#include "mlsds/csv.hpp"

#include <charconv>
#include <sstream>

namespace mlsds {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  out.push_back(std::move(field));
  return out;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.push_back(',');
    out += parts[i];
  }
  return out;
}

}  // namespace

std::vector<CsvRow> read_csv(std::istream& in, const std::string& source_name,
                             const std::vector<std::string>& expected_header) {
  std::vector<CsvRow> rows;
  std::string line;
  int lineno = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_line(line);
    if (!saw_header) {
      if (fields != expected_header)
        throw SchemaError(source_name + ":" + std::to_string(lineno),
                          "expected header \"" + join(expected_header) +
                              "\", got \"" + line + "\"");
      saw_header = true;
      continue;
    }
    if (fields.size() != expected_header.size())
      throw SchemaError(source_name + ":" + std::to_string(lineno),
                        "expected " + std::to_string(expected_header.size()) +
                            " fields, got " + std::to_string(fields.size()));
    rows.push_back({std::move(fields), lineno});
  }
  if (!saw_header)
    throw SchemaError(source_name, "empty file, expected header \"" +
                                       join(expected_header) + "\"");
  return rows;
}

double csv_number(const std::string& field, const std::string& path) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw SchemaError(path, "expected a number, got \"" + field + "\"");
  return value;
}

std::int64_t csv_int(const std::string& field, const std::string& path) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw SchemaError(path, "expected an integer, got \"" + field + "\"");
  return value;
}

}  // namespace mlsds

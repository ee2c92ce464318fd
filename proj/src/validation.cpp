#include "mlsds/validation.hpp"

#include <algorithm>

#include <json.hpp>

namespace mlsds {

std::string_view to_string(Severity s) {
  return s == Severity::error ? "error" : "warning";
}

void ValidationReport::add(Severity severity, std::string path,
                           std::string message) {
  findings.push_back({severity, std::move(path), std::move(message)});
}

void ValidationReport::merge(const ValidationReport& other) {
  findings.insert(findings.end(), other.findings.begin(),
                  other.findings.end());
}

bool ValidationReport::has_errors() const { return error_count() > 0; }

std::size_t ValidationReport::error_count() const {
  return std::count_if(findings.begin(), findings.end(), [](const Finding& f) {
    return f.severity == Severity::error;
  });
}

std::size_t ValidationReport::warning_count() const {
  return findings.size() - error_count();
}

void ValidationReport::promote_warnings() {
  for (auto& f : findings) f.severity = Severity::error;
}

std::string ValidationReport::to_json() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& f : findings) {
    arr.push_back({{"severity", std::string(to_string(f.severity))},
                   {"path", f.path},
                   {"message", f.message}});
  }
  return arr.dump(2);
}

namespace {
std::string describe(const std::string& path, const std::string& message) {
  return path.empty() ? message : path + ": " + message;
}
}  // namespace

SchemaError::SchemaError(std::string path, std::string message)
    : std::runtime_error(describe(path, message)),
      path_(std::move(path)),
      message_(std::move(message)) {}

DomainError::DomainError(std::string path, std::string message)
    : std::runtime_error(describe(path, message)),
      path_(std::move(path)),
      message_(std::move(message)) {}

AssembleError::AssembleError(ValidationReport report)
    : std::runtime_error("validation failed with " +
                         std::to_string(report.error_count()) + " error(s)"),
      report_(std::move(report)) {}

}  // namespace mlsds

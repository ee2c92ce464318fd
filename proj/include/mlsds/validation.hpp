#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mlsds {

enum class Severity { warning, error };

std::string_view to_string(Severity s);

// One validation finding. `path` is a dotted field path into the input
// document, e.g. "manifest.compliance[0].standard_id".
struct Finding {
  Severity severity;
  std::string path;
  std::string message;

  friend bool operator==(const Finding&, const Finding&) = default;
};

struct ValidationReport {
  std::vector<Finding> findings;

  void add(Severity severity, std::string path, std::string message);
  void merge(const ValidationReport& other);
  bool has_errors() const;
  std::size_t error_count() const;
  std::size_t warning_count() const;
  bool empty() const { return findings.empty(); }

  // Promotes every warning to an error (the CLI's --strict mode).
  void promote_warnings();

  // JSON array of {severity, path, message}.
  std::string to_json() const;
};

// Hard failure while reading an input document: syntax error, missing
// required field, type mismatch, or a violated type invariant.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string path, std::string message);
  const std::string& path() const noexcept { return path_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string path_;
  std::string message_;
};

// An operation was invoked outside its domain (degenerate class mix,
// out-of-range value, empty group, ...).
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string path, std::string message);
  const std::string& path() const noexcept { return path_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string path_;
  std::string message_;
};

// A referenced input file is missing or unreadable; the CLI reports this
// as a usage error rather than a validation finding.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by assemble() when section validation produced error findings.
class AssembleError : public std::runtime_error {
 public:
  explicit AssembleError(ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

}  // namespace mlsds

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cusumlab/combinatorics.hpp"

namespace cusumlab {

enum class Verdict { pass, fail, report, identically_zero, cap };

std::string to_string(Verdict v);
/// Throws std::invalid_argument outside the closed vocabulary.
Verdict parse_verdict(const std::string& text);

/// Scenario coordinates carried by a record; absent fields are omitted from JSON.
struct ScenarioFields {
  std::optional<int> c, b, k, p, q;
  std::optional<std::vector<int>> superscript;
  std::optional<std::vector<int>> h;

  friend bool operator==(const ScenarioFields&, const ScenarioFields&) = default;
  friend auto operator<=>(const ScenarioFields&, const ScenarioFields&) = default;
};

/// The unit of the result log: one JSON object per line.
struct VerificationRecord {
  std::string schema_version = "1";
  std::string command;
  ScenarioFields scenario;
  std::optional<std::vector<Rational>> w;
  std::string quantity;
  /// "num/den" for exact values, 17 significant digits for floats.
  std::string value;
  Verdict verdict = Verdict::report;
  std::uint64_t seed = 0;
  std::int64_t elapsed_ms = 0;
  /// Named auxiliary values (thresholds, companion quantities).
  std::map<std::string, std::string> detail;

  bool operator==(const VerificationRecord&) const = default;
};

std::string format_value(const Rational& x);
std::string format_value(double x);

std::string to_json_line(const VerificationRecord& rec);
VerificationRecord from_json_line(const std::string& line);

/// Scenario lexicographic, then h, then quantity and value.
void sort_records(std::vector<VerificationRecord>& records);

/// Appends newline-terminated JSON lines. Throws std::runtime_error on I/O failure.
void append_record(const VerificationRecord& rec, const std::filesystem::path& store);
void append_records(const std::vector<VerificationRecord>& records, const std::filesystem::path& store);

}  // namespace cusumlab

#pragma once

// Verification reports: named checks against thresholds plus free-form
// details. JSON is canonical; CSV carries only the check rows.

#include <string>
#include <vector>

#include "json.hpp"

namespace qchain {

using Json = nlohmann::ordered_json;

struct Check {
  enum class Relation { AtMost, AtLeast, Equal };

  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  Relation relation = Relation::AtMost;
  bool passed = false;
  std::string witness;

  /// value <= threshold.
  static Check at_most(std::string name, double value, double threshold, std::string witness = {});
  /// value >= threshold.
  static Check at_least(std::string name, double value, double threshold, std::string witness = {});
  /// Boolean outcome (value 1/0 against threshold 1).
  static Check holds(std::string name, bool ok, std::string witness = {});
};

struct Report {
  std::string command;
  Json parameters = Json::object();
  std::vector<Check> checks;
  Json details = Json::object();

  Check& add(Check c);
  bool passed() const;
  /// First failing check, for structured failure records.
  const Check* first_failure() const;

  Json to_json() const;
  /// Header `check,value,threshold,passed`.
  std::string to_csv() const;
};

/// Shortest round-trip decimal for doubles (std::to_chars), so reports are
/// byte-stable across runs.
std::string format_double(double v);

}  // namespace qchain

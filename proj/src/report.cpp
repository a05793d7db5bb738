#include "qchain/report.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

namespace qchain {

Check Check::at_most(std::string name, double value, double threshold, std::string witness) {
  return {std::move(name), value, threshold, Relation::AtMost, value <= threshold, std::move(witness)};
}

Check Check::at_least(std::string name, double value, double threshold, std::string witness) {
  return {std::move(name), value, threshold, Relation::AtLeast, value >= threshold, std::move(witness)};
}

Check Check::holds(std::string name, bool ok, std::string witness) {
  return {std::move(name), ok ? 1.0 : 0.0, 1.0, Relation::Equal, ok, std::move(witness)};
}

Check& Report::add(Check c) {
  checks.push_back(std::move(c));
  return checks.back();
}

bool Report::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

const Check* Report::first_failure() const {
  for (const auto& c : checks) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

namespace {

const char* relation_name(Check::Relation r) {
  switch (r) {
    case Check::Relation::AtMost: return "<=";
    case Check::Relation::AtLeast: return ">=";
    case Check::Relation::Equal: return "==";
  }
  return "?";
}

}  // namespace

Json Report::to_json() const {
  Json j;
  j["command"] = command;
  j["parameters"] = parameters;
  j["passed"] = passed();
  Json rows = Json::array();
  for (const auto& c : checks) {
    Json row;
    row["name"] = c.name;
    row["value"] = c.value;
    row["relation"] = relation_name(c.relation);
    row["threshold"] = c.threshold;
    row["passed"] = c.passed;
    if (!c.witness.empty()) row["witness"] = c.witness;
    rows.push_back(std::move(row));
  }
  j["checks"] = std::move(rows);
  if (const auto* f = first_failure()) {
    j["failure"] = {{"invariant", f->name}, {"witness", f->witness}};
  }
  if (!details.empty()) j["details"] = details;
  return j;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string Report::to_csv() const {
  std::ostringstream os;
  os << "check,value,threshold,passed\n";
  for (const auto& c : checks) {
    os << c.name << ',' << format_double(c.value) << ',' << format_double(c.threshold) << ','
       << (c.passed ? "true" : "false") << '\n';
  }
  return os.str();
}

}  // namespace qchain

#include "qchain/json_io.hpp"

#include "qchain/errors.hpp"

namespace qchain {

namespace {

Json flips_to_json(FlipWord w) {
  Json a = Json::array();
  for (int s : w.sites()) a.push_back(s);
  return a;
}

FlipWord flips_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidSpec("flips must be an array of site labels");
  std::vector<int> sites;
  for (const auto& s : j) {
    if (!s.is_number_integer()) throw InvalidSpec("site labels must be integers");
    sites.push_back(s.get<int>());
  }
  return FlipWord(std::span<const int>(sites));
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidSpec(std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_integer()) throw InvalidSpec(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

double number(const Json& v, const char* what) {
  if (!v.is_number()) throw InvalidSpec(std::string(what) + " must be a number");
  return v.get<double>();
}

}  // namespace

Json measure_to_json(const MeasureSpec& spec) {
  if (spec.is_ising()) return {{"kind", "ising"}, {"J", spec.as_ising().J}};
  const auto& b = spec.as_bernoulli();
  Json j{{"kind", "bernoulli"}};
  if (b.lambda.size() == 1) {
    j["lambda"] = b.lambda.front();
  } else {
    j["lambda"] = b.lambda;
  }
  return j;
}

MeasureSpec measure_from_json(const Json& j) {
  const auto& kind = field(j, "kind");
  if (!kind.is_string()) throw InvalidSpec("measure kind must be a string");
  const auto k = kind.get<std::string>();
  if (k == "ising") return MeasureSpec::ising(number(field(j, "J"), "J"));
  if (k != "bernoulli") throw InvalidSpec("unknown measure kind '" + k + "'");
  const auto& l = field(j, "lambda");
  if (l.is_array()) {
    std::vector<double> ls;
    for (const auto& v : l) ls.push_back(number(v, "lambda"));
    return MeasureSpec::bernoulli(std::move(ls));
  }
  return MeasureSpec::bernoulli(number(l, "lambda"));
}

Json element_to_json(const AlgebraElement& F) {
  Json terms = Json::array();
  for (const auto& [w, f] : F.terms()) {
    Json values = Json::array();
    for (const auto& v : f.values()) values.push_back({v.real(), v.imag()});
    terms.push_back({{"flips", flips_to_json(w)}, {"depth", f.depth()}, {"values", std::move(values)}});
  }
  return {{"terms", std::move(terms)}};
}

AlgebraElement element_from_json(const Json& j) {
  const auto& terms = field(j, "terms");
  if (!terms.is_array()) throw InvalidSpec("terms must be an array");
  AlgebraElement F;
  for (const auto& t : terms) {
    const auto w = flips_from_json(field(t, "flips"));
    const auto& values = field(t, "values");
    if (!values.is_array()) throw InvalidSpec("values must be an array");
    std::vector<Complex> vs;
    for (const auto& v : values) {
      if (!v.is_array() || v.size() != 2) throw InvalidSpec("complex values are [re, im] pairs");
      vs.emplace_back(number(v[0], "real part"), number(v[1], "imaginary part"));
    }
    F.accumulate(w, CylinderFunction(int_field(t, "depth"), std::move(vs)));
  }
  return F;
}

Json dfs_table_to_json(const DfsTable& S) {
  Json entries = Json::array();
  for (std::uint64_t w = 0; w < S.word_count(); ++w) {
    const auto f = S.entry(FlipWord::from_mask(w));
    entries.push_back({{"flips", flips_to_json(FlipWord::from_mask(w))},
                       {"depth", S.depth()},
                       {"values", f.values()}});
  }
  return {{"n", S.n()}, {"depth", S.depth()}, {"entries", std::move(entries)}};
}

DfsTable dfs_table_from_json(const Json& j) {
  DfsTable S(int_field(j, "n"), int_field(j, "depth"));
  const auto& entries = field(j, "entries");
  if (!entries.is_array()) throw InvalidSpec("entries must be an array");
  for (const auto& e : entries) {
    const auto w = flips_from_json(field(e, "flips"));
    const auto& values = field(e, "values");
    if (!values.is_array()) throw InvalidSpec("values must be an array");
    std::vector<double> vs;
    for (const auto& v : values) vs.push_back(number(v, "table value"));
    const int depth = int_field(e, "depth");
    if (depth > S.depth()) throw DepthMismatch("entry deeper than the table");
    S.set_entry(w, RealCylinderFunction(depth, std::move(vs)));
  }
  return S;
}

}  // namespace qchain

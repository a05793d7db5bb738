#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qchain/measures.hpp"
#include "qchain/report.hpp"

namespace qchain::cli {

/// Bad flags or config; maps to exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string measure = "bernoulli";
  bool measure_given = false;
  /// Single value, per-site list, or (for `trace`) the sweep.
  std::vector<double> lambdas = {0.3};
  bool lambda_given = false;
  double J = 1.0;
  int n = 4;
  int depth = 6;
  int trials = 1000;
  std::uint64_t seed = 1;
  double tol = 1e-12;
  std::string format = "json";
  std::optional<std::string> out;
  std::optional<std::string> input;
  std::optional<std::string> emit_table;

  /// Throws UsageError.
  void validate() const;
  MeasureSpec spec() const;
  Json to_json() const;
};

Report run_axioms(const RunConfig& cfg);
Report run_haar(const RunConfig& cfg);
Report run_algebra(const RunConfig& cfg);
Report run_glimm(const RunConfig& cfg);
Report run_trace(const RunConfig& cfg);
Report run_dfs_build(const RunConfig& cfg);
Report run_dfs_check(const RunConfig& cfg);
Report run_ising_partition(const RunConfig& cfg);
Report run_ising_dynamics(const RunConfig& cfg);
Report run_spectrum(const RunConfig& cfg);

}  // namespace qchain::cli

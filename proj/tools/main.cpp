// qchain: verification harness for the qubit-chain groupoid library.
//
// Exit status: 0 all checks pass, 1 some invariant violated, 2 usage or
// configuration error.

#include <fstream>
#include <functional>
#include <iostream>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "qchain/errors.hpp"

namespace {

using qchain::Json;
using qchain::Report;
using qchain::cli::RunConfig;
using qchain::cli::UsageError;

struct Options {
  CLI::Option* measure = nullptr;
  CLI::Option* lambda = nullptr;
  CLI::Option* J = nullptr;
  CLI::Option* n = nullptr;
  CLI::Option* depth = nullptr;
  CLI::Option* trials = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* tol = nullptr;
  CLI::Option* format = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* config = nullptr;
};

struct Command {
  std::string name;
  std::string help;
  std::function<Report(const RunConfig&)> run;
};

Options add_common(CLI::App* sub, RunConfig& cfg, std::string& config_path) {
  Options o;
  o.measure = sub->add_option("--measure", cfg.measure, "bernoulli | ising");
  o.lambda = sub->add_option("--lambda", cfg.lambdas, "Bernoulli parameter(s), comma separated")
                 ->delimiter(',');
  o.J = sub->add_option("--J", cfg.J, "Ising coupling");
  o.n = sub->add_option("--n", cfg.n, "horizon");
  o.depth = sub->add_option("--depth", cfg.depth, "prefix depth");
  o.trials = sub->add_option("--trials", cfg.trials, "random trials");
  o.seed = sub->add_option("--seed", cfg.seed, "master seed");
  o.tol = sub->add_option("--tol", cfg.tol, "tolerance");
  o.format = sub->add_option("--format", cfg.format, "json | csv");
  o.out = sub->add_option("--out", cfg.out, "report path (stdout if absent)");
  o.config = sub->add_option("--config", config_path, "JSON config; flags override its values");
  return o;
}

template <typename T>
void fill(T& field, const CLI::Option* flag, const Json& value) {
  if (!flag->count()) field = value.get<T>();
}

// Fills fields from the config file unless the flag was given.
void apply_config(const std::string& path, const Options& o, RunConfig& cfg) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot read config " + path);
  Json j;
  try {
    j = Json::parse(is);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("malformed config: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "measure") {
        fill(cfg.measure, o.measure, value);
        cfg.measure_given = true;
      } else if (key == "lambda") {
        if (!o.lambda->count()) {
          cfg.lambdas = value.is_array() ? value.get<std::vector<double>>()
                                         : std::vector<double>{value.get<double>()};
        }
        cfg.lambda_given = true;
      } else if (key == "J") {
        fill(cfg.J, o.J, value);
      } else if (key == "n") {
        fill(cfg.n, o.n, value);
      } else if (key == "depth") {
        fill(cfg.depth, o.depth, value);
      } else if (key == "trials") {
        fill(cfg.trials, o.trials, value);
      } else if (key == "seed") {
        fill(cfg.seed, o.seed, value);
      } else if (key == "tol") {
        fill(cfg.tol, o.tol, value);
      } else if (key == "format") {
        fill(cfg.format, o.format, value);
      } else if (key == "out") {
        if (!o.out->count()) cfg.out = value.get<std::string>();
      } else {
        throw UsageError("unknown config key '" + key + "'");
      }
    }
  } catch (const Json::exception& e) {
    throw UsageError(std::string("config value of wrong type: ") + e.what());
  }
}

void emit(const Report& report, const RunConfig& cfg) {
  const std::string text = cfg.format == "csv" ? report.to_csv() : report.to_json().dump(2) + "\n";
  if (!cfg.out) {
    std::cout << text;
    return;
  }
  std::ofstream os(*cfg.out);
  if (!os) throw UsageError("cannot write " + *cfg.out);
  os << text;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace qchain::cli;
  CLI::App app{"Verification harness for the qubit-chain groupoid algebra"};
  app.require_subcommand(1);

  const std::vector<Command> commands = {
      {"axioms", "groupoid axioms, exhaustive at horizon n", run_axioms},
      {"haar", "Radon-Nikodym covariance, Kolmogorov consistency, modular homomorphism", run_haar},
      {"algebra", "associativity, involution, operator bound, unitarity", run_algebra},
      {"glimm", "GNS expectation against the Powers trace", run_glimm},
      {"trace", "traceality sweep over the lambda list", run_trace},
      {"dfs-build", "inductive DFS construction and cochain identities", run_dfs_build},
      {"dfs-check", "verify a DFS table (JSON input or the Ising table)", run_dfs_check},
      {"ising-partition", "partition function: brute force, recursion, closed forms", run_ising_partition},
      {"ising-dynamics", "modular evolution against Heisenberg evolution", run_ising_dynamics},
      {"spectrum", "attained modular spectrum against the lattice", run_spectrum},
  };

  RunConfig cfg;
  std::string config_path;
  std::vector<std::pair<CLI::App*, Options>> subs;
  std::optional<std::string> input, emit_table;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    auto opts = add_common(sub, cfg, config_path);
    if (c.name == "dfs-check") sub->add_option("--input", input, "DFS table JSON");
    if (c.name == "dfs-build") sub->add_option("--emit-table", emit_table, "write the built table as JSON");
    subs.emplace_back(sub, opts);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  for (std::size_t i = 0; i < commands.size(); ++i) {
    auto* sub = subs[i].first;
    if (!sub->parsed()) continue;
    const auto& o = subs[i].second;
    try {
      cfg.measure_given = o.measure->count() > 0;
      cfg.lambda_given = o.lambda->count() > 0;
      if (o.config->count()) apply_config(config_path, o, cfg);
      cfg.input = input;
      cfg.emit_table = emit_table;
      cfg.validate();
      const auto report = commands[i].run(cfg);
      emit(report, cfg);
      if (const auto* f = report.first_failure()) {
        std::cerr << commands[i].name << ": violated " << f->name
                  << (f->witness.empty() ? "" : " at " + f->witness) << '\n';
        return 1;
      }
      return 0;
    } catch (const UsageError& e) {
      std::cerr << commands[i].name << ": " << e.what() << '\n';
      return 2;
    } catch (const qchain::InvariantViolation& e) {
      std::cerr << commands[i].name << ": " << e.what() << '\n';
      return 1;
    } catch (const qchain::Error& e) {
      std::cerr << commands[i].name << ": " << e.what() << '\n';
      return 2;
    }
  }
  return 2;
}

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "oracle.hpp"
#include "weisslab/capacity.hpp"
#include "weisslab/experiment.hpp"
#include "weisslab/numerics.hpp"

namespace {

using weisslab::ConfigError;
using weisslab::ExitCode;

int code(ExitCode c) { return static_cast<int>(c); }

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  return weisslab::parse_key_values(in);
}

int run_capacity(const std::string& config_path, const std::string& out) {
  std::ifstream in(config_path);
  if (!in) throw ConfigError("cannot read config '" + config_path + "'");
  weisslab::CapacityProblem problem;
  try {
    problem = weisslab::parse_capacity_config(in);
  } catch (const weisslab::DomainError& e) {
    throw ConfigError(e.what());
  }
  const auto result = weisslab::capacity_upper(problem);
  const std::string json = weisslab::capacity_result_json(result) + "\n";
  if (out.empty()) {
    std::cout << json;
  } else {
    std::ofstream f(out);
    if (!(f << json)) throw std::runtime_error("cannot write '" + out + "'");
  }
  return code(result.converged ? ExitCode::pass : ExitCode::not_converged);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted admissibility, Carleson and capacity experiments"};
  std::string experiment;
  std::string config_path;
  std::string out;
  double alpha = 0.0;
  long long seed = 0;
  auto* experiment_opt = app.add_option("experiment", experiment,
                                        "capacity-scaling | onebox | halfplane-counterexample | "
                                        "disk-counterexample | shift-counterexample | verify | capacity")
                             ->required();
  auto* config_opt = app.add_option("--config", config_path, "key = value file; overrides flags");
  auto* alpha_opt = app.add_option("--alpha", alpha, "weight exponent");
  auto* seed_opt = app.add_option("--seed", seed, "random seed")->check(CLI::NonNegativeNumber);
  app.add_option("--out", out, "CSV path; the JSON sidecar is written next to it");
  (void)experiment_opt;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : code(ExitCode::config_error);
  }

  try {
    weisslab::apply_thread_env();
    if (experiment == "capacity") {
      if (config_opt->count() == 0) throw ConfigError("capacity needs --config");
      return run_capacity(config_path, out);
    }

    weisslab::ExperimentConfig config;
    config.experiment = experiment;
    if (alpha_opt->count() > 0) config.params["alpha"] = weisslab::format_shortest(alpha);
    if (seed_opt->count() > 0) config.params["seed"] = std::to_string(seed);
    if (config_opt->count() > 0) {
      for (const auto& [key, value] : read_config(config_path)) config.params[key] = value;
    }
    if (const auto it = config.params.find("out"); it != config.params.end()) out = it->second;
    if (out.empty()) out = experiment + ".csv";

    const auto report = experiment == "verify" ? weisslab::oracle::run_verify(config) : weisslab::run(config);
    weisslab::write_report(report, out);
    std::cout << weisslab::emit_csv(report);
    for (const auto& failure : report.failures) std::cerr << "assertion failed: " << failure << '\n';
    if (!report.converged) std::cerr << "solver did not converge\n";
    return code(report.status());
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return code(ExitCode::config_error);
  } catch (const weisslab::DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return code(ExitCode::config_error);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return code(ExitCode::assertion_failed);
  }
}

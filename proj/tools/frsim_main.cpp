#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "frsim/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "Slot-synchronous random-access simulator: delay-sensitive devices "
      "share a sized preamble sub-pool and retry collided requests in the "
      "next slot"};
  app.require_subcommand(1);

  std::string config_path;
  std::string simulate_out;
  CLI::App* simulate =
      app.add_subcommand("simulate", "Run one scenario, write trace.csv and "
                                     "summary.json into the output directory");
  simulate->add_option("--config", config_path, "Scenario JSON path")
      ->required();
  simulate->add_option("--out", simulate_out, "Output directory")->required();

  std::string preset;
  std::string experiment_out;
  std::uint64_t seed = 42;
  CLI::App* experiment = app.add_subcommand(
      "experiment", "Run a named experiment preset and write its CSV");
  experiment->add_option("preset", preset, "fig3a, fig3b, fig4, or fig5")
      ->required();
  experiment->add_option("--out", experiment_out, "Output directory")
      ->required();
  experiment->add_option("--seed", seed, "Base seed (default 42)");

  int n1 = 0;
  int l1 = 0;
  double lambda = 0.0;
  double lambda_max = -1.0;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "Print the closed-form stability report as JSON");
  analyze->add_option("--n1", n1, "Number of delay-sensitive devices")
      ->required();
  analyze->add_option("--l1", l1, "Preamble sub-pool size")->required();
  analyze->add_option("--lambda", lambda, "Per-device mean arrival rate")
      ->required();
  analyze->add_option("--lambda-max", lambda_max,
                      "Rate cap for the device-count bounds (default: lambda)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return frsim::kExitBadInput;
  }

  if (*simulate)
    return frsim::cmd_simulate(config_path, simulate_out, std::cerr);
  if (*experiment)
    return frsim::cmd_experiment(preset, experiment_out, seed, std::cerr);
  std::optional<double> cap;
  if (analyze->count("--lambda-max") > 0) cap = lambda_max;
  return frsim::cmd_analyze(n1, l1, lambda, cap, std::cout, std::cerr);
}

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "frsim/engine.hpp"

namespace frsim {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitBadInput = 1;
inline constexpr int kExitIo = 2;

// Filesystem failures: unreadable config, unwritable output.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 9 significant digits, the serialization width for every real number the
// tool emits.
std::string format_double(double value);

// Scenario documents are flat JSON objects:
//   n1, l_total, horizon       integers (required)
//   l1                         integer or "adaptive" (required)
//   lambda                     number or array of n1 numbers (required)
//   arrival_law                "bernoulli" | "poisson" (required)
//   mu                         number (optional, default 0.01 / n1)
//   warmup                     integer (optional, default horizon / 10)
//   seed                       unsigned integer (optional, default 1)
// Unknown keys are rejected.
ScenarioConfig scenario_from_json(const std::string& text);
std::string scenario_to_json(const ScenarioConfig& config);
ScenarioConfig load_scenario(const std::filesystem::path& path);

// Per-slot trace with the fixed column order
// slot,k1,successes,collisions,l1,z,mean_queue,max_queue. Requires metrics
// recorded at TraceLevel::kFull.
void write_trace_csv(std::ostream& out, const ScenarioConfig& config,
                     const RunMetrics& metrics);

std::string summary_to_json(const ScenarioConfig& config,
                            const RunMetrics& metrics);

// simulate: run one scenario, write trace.csv and summary.json into out_dir.
int cmd_simulate(const std::filesystem::path& config_path,
                 const std::filesystem::path& out_dir, std::ostream& diag);

// experiment: run a named preset (fig3a, fig3b, fig4, fig5) and write its
// CSV into out_dir. Outputs are a pure function of (preset, seed).
int cmd_experiment(std::string_view preset,
                   const std::filesystem::path& out_dir, std::uint64_t seed,
                   std::ostream& diag);
const std::vector<std::string>& experiment_presets();

// analyze: print the closed-form stability report as JSON on `out`.
int cmd_analyze(int n1, int l1, double lambda,
                std::optional<double> lambda_max, std::ostream& out,
                std::ostream& diag);

}  // namespace frsim

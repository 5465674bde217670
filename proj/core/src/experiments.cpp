#include "frsim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "frsim/stability.hpp"

namespace frsim {

namespace {

using nlohmann::json;

const char* law_name(ArrivalLaw law) {
  return law == ArrivalLaw::kBernoulli ? "bernoulli" : "poisson";
}

std::string rates_summary(const ScenarioConfig& config) {
  const auto& rates = config.rates;
  const bool uniform = std::all_of(rates.begin(), rates.end(), [&](double r) {
    return r == rates.front();
  });
  return uniform ? format_double(rates.front()) : std::string("per-device");
}

void config_comment(std::ostream& out, const ScenarioConfig& config) {
  out << "# n1=" << config.n1 << " l_total=" << config.l_total << " l1="
      << (config.adaptive() ? std::string("adaptive")
                            : std::to_string(*config.l1))
      << " lambda=" << rates_summary(config)
      << " arrival_law=" << law_name(config.law);
  if (config.adaptive()) out << " mu=" << format_double(config.effective_mu());
  out << " horizon=" << config.horizon
      << " warmup=" << config.effective_warmup() << " seed=" << config.seed
      << "\n";
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw IoError("cannot create output directory " + dir.string());
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

// ---- scenario JSON ------------------------------------------------------

void reject_unknown_keys(const json& doc) {
  static const char* known[] = {"n1",     "l_total", "l1",
                                "lambda", "arrival_law", "mu",
                                "horizon", "warmup",  "seed"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) {
          return key == k;
        }) == std::end(known))
      throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

std::int64_t require_integer(const json& doc, const char* key) {
  if (!doc.contains(key))
    throw std::invalid_argument(std::string("config: missing '") + key + "'");
  const json& v = doc.at(key);
  if (!v.is_number_integer())
    throw std::invalid_argument(std::string("config: '") + key +
                                "' must be an integer");
  return v.get<std::int64_t>();
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.9g", value);
  return buffer;
}

ScenarioConfig scenario_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") +
                                e.what());
  }
  if (!doc.is_object())
    throw std::invalid_argument("config: document must be a JSON object");
  reject_unknown_keys(doc);

  ScenarioConfig config;
  config.n1 = static_cast<int>(require_integer(doc, "n1"));
  config.l_total = static_cast<int>(require_integer(doc, "l_total"));

  if (!doc.contains("l1"))
    throw std::invalid_argument("config: missing 'l1'");
  const json& l1 = doc.at("l1");
  if (l1.is_string()) {
    if (l1.get<std::string>() != "adaptive")
      throw std::invalid_argument(
          "config: 'l1' must be an integer or \"adaptive\"");
  } else if (l1.is_number_integer()) {
    config.l1 = l1.get<int>();
  } else {
    throw std::invalid_argument(
        "config: 'l1' must be an integer or \"adaptive\"");
  }

  if (!doc.contains("arrival_law"))
    throw std::invalid_argument("config: missing 'arrival_law'");
  const json& law = doc.at("arrival_law");
  if (law.is_string() && law.get<std::string>() == "bernoulli") {
    config.law = ArrivalLaw::kBernoulli;
  } else if (law.is_string() && law.get<std::string>() == "poisson") {
    config.law = ArrivalLaw::kPoisson;
  } else {
    throw std::invalid_argument(
        "config: 'arrival_law' must be \"bernoulli\" or \"poisson\"");
  }

  if (config.n1 < 1) throw std::invalid_argument("config: n1 must be >= 1");
  if (!doc.contains("lambda"))
    throw std::invalid_argument("config: missing 'lambda'");
  const json& lambda = doc.at("lambda");
  if (lambda.is_number()) {
    config.rates.assign(config.n1, lambda.get<double>());
  } else if (lambda.is_array()) {
    if (static_cast<int>(lambda.size()) != config.n1)
      throw std::invalid_argument(
          "config: 'lambda' array must have n1 entries");
    for (const json& r : lambda) {
      if (!r.is_number())
        throw std::invalid_argument("config: 'lambda' entries must be numbers");
      config.rates.push_back(r.get<double>());
    }
  } else {
    throw std::invalid_argument(
        "config: 'lambda' must be a number or an array");
  }

  if (doc.contains("mu")) {
    if (!doc.at("mu").is_number())
      throw std::invalid_argument("config: 'mu' must be a number");
    config.mu = doc.at("mu").get<double>();
  }
  config.horizon = require_integer(doc, "horizon");
  if (doc.contains("warmup")) config.warmup = require_integer(doc, "warmup");
  if (doc.contains("seed")) {
    const json& seed = doc.at("seed");
    if (!seed.is_number_unsigned() && !seed.is_number_integer())
      throw std::invalid_argument("config: 'seed' must be an integer");
    if (seed.is_number_integer() && seed.get<std::int64_t>() < 0)
      throw std::invalid_argument("config: 'seed' must be non-negative");
    config.seed = seed.get<std::uint64_t>();
  }

  config.validate();
  return config;
}

std::string scenario_to_json(const ScenarioConfig& config) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"n1\": " << config.n1 << ",\n";
  out << "  \"l_total\": " << config.l_total << ",\n";
  if (config.adaptive())
    out << "  \"l1\": \"adaptive\",\n";
  else
    out << "  \"l1\": " << *config.l1 << ",\n";
  const bool uniform =
      std::all_of(config.rates.begin(), config.rates.end(),
                  [&](double r) { return r == config.rates.front(); });
  if (uniform) {
    out << "  \"lambda\": " << format_double(config.rates.front()) << ",\n";
  } else {
    out << "  \"lambda\": [";
    for (std::size_t i = 0; i < config.rates.size(); ++i)
      out << (i ? ", " : "") << format_double(config.rates[i]);
    out << "],\n";
  }
  out << "  \"arrival_law\": \"" << law_name(config.law) << "\",\n";
  if (config.mu > 0.0)
    out << "  \"mu\": " << format_double(config.mu) << ",\n";
  out << "  \"horizon\": " << config.horizon << ",\n";
  out << "  \"warmup\": " << config.effective_warmup() << ",\n";
  out << "  \"seed\": " << config.seed << "\n";
  out << "}\n";
  return out.str();
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("read failed for " + path.string());
  return scenario_from_json(buffer.str());
}

void write_trace_csv(std::ostream& out, const ScenarioConfig& config,
                     const RunMetrics& metrics) {
  if (metrics.k1_by_slot.size() != metrics.mean_queue_by_slot.size())
    throw std::invalid_argument("write_trace_csv: needs a full trace");
  config_comment(out, config);
  out << "slot,k1,successes,collisions,l1,z,mean_queue,max_queue\n";
  for (std::size_t t = 0; t < metrics.mean_queue_by_slot.size(); ++t) {
    out << t << ',' << metrics.k1_by_slot[t] << ','
        << metrics.successes_by_slot[t] << ',' << metrics.collisions_by_slot[t]
        << ',' << metrics.l1_by_slot[t] << ','
        << format_double(metrics.z_by_slot[t]) << ','
        << format_double(metrics.mean_queue_by_slot[t]) << ','
        << metrics.max_queue_by_slot[t] << "\n";
  }
}

std::string summary_to_json(const ScenarioConfig& config,
                            const RunMetrics& metrics) {
  const RunSummary& s = metrics.summary;
  std::ostringstream out;
  out << "{\n";
  out << "  \"mean_queue\": " << format_double(s.mean_queue) << ",\n";
  out << "  \"max_queue\": " << s.max_queue << ",\n";
  out << "  \"mean_access_delay\": " << format_double(s.mean_delay) << ",\n";
  out << "  \"collision_rate\": " << format_double(s.collision_rate) << ",\n";
  out << "  \"unstable\": " << (s.unstable ? "true" : "false") << ",\n";
  out << "  \"drift_slope\": " << format_double(s.drift_slope) << ",\n";
  out << "  \"final_l1\": " << s.final_l1 << ",\n";
  out << "  \"avg_l1\": " << format_double(s.avg_l1) << ",\n";
  out << "  \"served\": " << s.served << ",\n";
  out << "  \"arrivals\": " << s.arrivals << ",\n";
  out << "  \"horizon\": " << config.horizon << ",\n";
  out << "  \"warmup\": " << config.effective_warmup() << ",\n";
  out << "  \"seed\": " << config.seed << "\n";
  out << "}\n";
  return out.str();
}

namespace {

// ---- presets ------------------------------------------------------------

ScenarioConfig fixed_pool_base(int n1, int l1, double lambda,
                               std::uint64_t seed) {
  ScenarioConfig config;
  config.n1 = n1;
  config.l_total = 50;
  config.l1 = l1;
  config.rates.assign(n1, lambda);
  config.horizon = 200000;
  config.warmup = 20000;
  config.seed = seed;
  config.trace = TraceLevel::kSummary;
  return config;
}

ScenarioConfig adaptive_base(int n1, double lambda, std::uint64_t seed) {
  ScenarioConfig config;
  config.n1 = n1;
  config.l_total = 50;
  config.rates.assign(n1, lambda);
  config.horizon = 100000;
  config.warmup = 10000;
  config.seed = seed;
  config.trace = TraceLevel::kSummary;
  return config;
}

struct SeedAverage {
  double mean_queue = 0.0;
  std::int64_t max_queue = 0;
  double collision_rate = 0.0;
  int unstable_votes = 0;
  int seeds = 0;
};

SeedAverage average_over_seeds(const ScenarioConfig& base, int seeds) {
  SeedAverage avg;
  avg.seeds = seeds;
  for (int s = 0; s < seeds; ++s) {
    ScenarioConfig config = base;
    config.seed = base.seed + static_cast<std::uint64_t>(s);
    const RunMetrics metrics = run(config);
    avg.mean_queue += metrics.summary.mean_queue;
    avg.max_queue = std::max(avg.max_queue, metrics.summary.max_queue);
    avg.collision_rate += metrics.summary.collision_rate;
    avg.unstable_votes += metrics.summary.unstable ? 1 : 0;
  }
  avg.mean_queue /= seeds;
  avg.collision_rate /= seeds;
  return avg;
}

void write_fig3a(const std::filesystem::path& path, std::uint64_t seed) {
  std::ofstream out = open_output(path);
  out << "# preset=fig3a n1=30 l1=20 l_total=50 arrival_law=bernoulli"
         " horizon=200000 warmup=20000 seeds=3 base_seed="
      << seed << "\n";
  out << "lambda,mean_queue,max_queue,collision_rate,unstable\n";
  for (int i = 0; i <= 8; ++i) {
    const double lambda = 0.05 + 0.025 * i;
    const SeedAverage avg =
        average_over_seeds(fixed_pool_base(30, 20, lambda, seed), 3);
    out << format_double(lambda) << ',' << format_double(avg.mean_queue) << ','
        << avg.max_queue << ',' << format_double(avg.collision_rate) << ','
        << (avg.unstable_votes * 2 >= avg.seeds ? 1 : 0) << "\n";
  }
  finish_output(out, path);
}

void write_fig3b(const std::filesystem::path& path, std::uint64_t seed) {
  std::ofstream out = open_output(path);
  out << "# preset=fig3b lambda=0.2 l1=20 l_total=50 arrival_law=bernoulli"
         " horizon=200000 warmup=20000 seeds=3 base_seed="
      << seed << "\n";
  out << "n1,mean_queue,max_queue,collision_rate,unstable\n";
  for (int n1 = 5; n1 <= 40; n1 += 5) {
    const SeedAverage avg =
        average_over_seeds(fixed_pool_base(n1, 20, 0.2, seed), 3);
    out << n1 << ',' << format_double(avg.mean_queue) << ',' << avg.max_queue
        << ',' << format_double(avg.collision_rate) << ','
        << (avg.unstable_votes * 2 >= avg.seeds ? 1 : 0) << "\n";
  }
  finish_output(out, path);
}

void write_fig4(const std::filesystem::path& path, std::uint64_t seed) {
  ScenarioConfig config = adaptive_base(30, 0.2, seed);
  config.trace = TraceLevel::kFull;
  const RunMetrics metrics = run(config);

  std::ofstream out = open_output(path);
  config_comment(out, config);
  out << "slot,max_queue,l1,mean_queue\n";
  for (std::size_t t = 0; t < metrics.mean_queue_by_slot.size(); ++t)
    out << t << ',' << metrics.max_queue_by_slot[t] << ','
        << metrics.l1_by_slot[t] << ','
        << format_double(metrics.mean_queue_by_slot[t]) << "\n";
  finish_output(out, path);
}

void write_fig5(const std::filesystem::path& path, std::uint64_t seed) {
  std::ofstream out = open_output(path);
  out << "# preset=fig5 lambda=0.2 l_total=50 l1=adaptive"
         " arrival_law=bernoulli horizon=100000 warmup=10000 base_seed="
      << seed << "\n";
  out << "n1,avg_l1,min_stable_l1,mean_queue,max_queue\n";
  int index = 0;
  for (int n1 = 10; n1 <= 30; n1 += 5, ++index) {
    ScenarioConfig config = adaptive_base(n1, 0.2, seed);
    config.seed = seed + 1000 * static_cast<std::uint64_t>(index);
    const RunMetrics metrics = run(config);
    out << n1 << ',' << format_double(metrics.summary.avg_l1) << ','
        << min_stable_l1(0.2, n1) << ','
        << format_double(metrics.summary.mean_queue) << ','
        << metrics.summary.max_queue << "\n";
  }
  finish_output(out, path);
}

}  // namespace

int cmd_simulate(const std::filesystem::path& config_path,
                 const std::filesystem::path& out_dir, std::ostream& diag) {
  try {
    ScenarioConfig config = load_scenario(config_path);
    config.trace = TraceLevel::kFull;
    const RunMetrics metrics = run(config);

    ensure_directory(out_dir);
    const std::filesystem::path trace_path = out_dir / "trace.csv";
    std::ofstream trace = open_output(trace_path);
    write_trace_csv(trace, config, metrics);
    finish_output(trace, trace_path);

    const std::filesystem::path summary_path = out_dir / "summary.json";
    std::ofstream summary = open_output(summary_path);
    summary << summary_to_json(config, metrics);
    finish_output(summary, summary_path);
    return kExitOk;
  } catch (const IoError& e) {
    diag << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    diag << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
}

const std::vector<std::string>& experiment_presets() {
  static const std::vector<std::string> presets = {"fig3a", "fig3b", "fig4",
                                                   "fig5"};
  return presets;
}

int cmd_experiment(std::string_view preset,
                   const std::filesystem::path& out_dir, std::uint64_t seed,
                   std::ostream& diag) {
  try {
    ensure_directory(out_dir);
    if (preset == "fig3a") {
      write_fig3a(out_dir / "fig3a.csv", seed);
    } else if (preset == "fig3b") {
      write_fig3b(out_dir / "fig3b.csv", seed);
    } else if (preset == "fig4") {
      write_fig4(out_dir / "fig4.csv", seed);
    } else if (preset == "fig5") {
      write_fig5(out_dir / "fig5.csv", seed);
    } else {
      diag << "error: unknown preset '" << preset
           << "' (expected fig3a, fig3b, fig4, or fig5)\n";
      return kExitBadInput;
    }
    return kExitOk;
  } catch (const IoError& e) {
    diag << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    diag << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
}

int cmd_analyze(int n1, int l1, double lambda,
                std::optional<double> lambda_max, std::ostream& out,
                std::ostream& diag) {
  try {
    if (!std::isfinite(lambda) || lambda < 0.0 || lambda >= 1.0)
      throw std::invalid_argument("analyze: lambda must lie in [0, 1)");
    if (lambda_max.has_value() &&
        (!std::isfinite(*lambda_max) || *lambda_max <= 0.0 ||
         *lambda_max > 1.0))
      throw std::invalid_argument("analyze: lambda-max must lie in (0, 1]");
    const double bound_rate = lambda_max.value_or(lambda);
    const StabilityReport report = check_stability(lambda, n1, l1);

    out << "{\n";
    out << "  \"n1\": " << n1 << ",\n";
    out << "  \"l1\": " << l1 << ",\n";
    out << "  \"mean_rate\": " << format_double(report.mean_rate) << ",\n";
    out << "  \"full_load_success\": "
        << format_double(report.full_load_success) << ",\n";
    out << "  \"stable\": " << (report.stable ? "true" : "false") << ",\n";
    out << "  \"margin\": " << format_double(report.margin) << ",\n";
    out << "  \"min_stable_l1\": " << min_stable_l1(lambda, n1) << ",\n";
    if (l1 >= 2 && bound_rate > 0.0 && bound_rate <= 1.0) {
      const DeviceCountBound bound = max_stable_n1(bound_rate, l1);
      out << "  \"lambda_max\": " << format_double(bound_rate) << ",\n";
      out << "  \"n1_bound_exact\": " << bound.exact << ",\n";
      out << "  \"n1_bound_exponential\": " << format_double(bound.exponential)
          << ",\n";
    } else {
      out << "  \"lambda_max\": null,\n";
      out << "  \"n1_bound_exact\": null,\n";
      out << "  \"n1_bound_exponential\": null,\n";
    }
    if (n1 >= 2) {
      const double total = lambda * n1;
      out << "  \"z_star\": " << format_double(optimal_z(total, n1)) << ",\n";
      out << "  \"l1_star\": " << format_double(optimal_l1_continuous(total, n1))
          << "\n";
    } else {
      out << "  \"z_star\": null,\n";
      out << "  \"l1_star\": null\n";
    }
    out << "}\n";
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    diag << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
}

}  // namespace frsim

// cmr: coded MapReduce shuffle simulator and analysis tool.
//
// Subcommands: run, sweep, analyze, verify, demo-wordcount.
// Exit codes: 0 success, 2 config error, 3 correctness failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cmr/analysis.hpp"
#include "cmr/map_exec.hpp"
#include "cmr/oracle.hpp"
#include "cmr/rng.hpp"
#include "cmr/runner.hpp"
#include "cmr/wordcount.hpp"

namespace {

enum LogLevel { kLogOff = 0, kLogInfo = 1, kLogDebug = 2 };

int log_level() {
  const char* env = std::getenv("CMR_LOG");
  if (env == nullptr || std::string(env) == "off") return kLogOff;
  if (std::string(env) == "info") return kLogInfo;
  if (std::string(env) == "debug") return kLogDebug;
  return kLogOff;
}

void log_info(const std::string& msg) {
  if (log_level() >= kLogInfo) std::cerr << "[cmr] " << msg << "\n";
}

struct SpecFlags {
  std::optional<int64_t> n;
  std::optional<int64_t> q;
  std::optional<int> k;
  std::optional<int> pk;
  std::optional<int> rk;
  std::optional<int> f;
  std::optional<double> mu;
  std::optional<uint64_t> seed;
  std::string config_path;
};

void add_spec_flags(CLI::App* cmd, SpecFlags& flags, bool with_rk = true) {
  cmd->add_option("--n", flags.n, "subfile count (pre-padding)");
  cmd->add_option("--q", flags.q, "key count (multiple of k)");
  cmd->add_option("--k", flags.k, "server count");
  cmd->add_option("--pk", flags.pk, "servers assigned per subfile (pK)");
  if (with_rk) cmd->add_option("--rk", flags.rk, "servers that finish each subfile (rK)");
  cmd->add_option("--f", flags.f, "bits per intermediate value");
  cmd->add_option("--mu", flags.mu, "per-server map processing rate");
  cmd->add_option("--seed", flags.seed, "job seed");
  cmd->add_option("--config", flags.config_path, "JSON config file; flags override it");
}

// JSON config first, then flag overrides.
cmr::JobSpec resolve_spec(const SpecFlags& flags) {
  cmr::JobSpec raw;
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) throw cmr::Error(cmr::Errc::BadConfig, "cannot open config " + flags.config_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    cmr::JobSpec from_file = cmr::spec_from_json(buf.str());
    raw = from_file;
    raw.n = from_file.n_raw;
  }
  if (flags.n) raw.n = *flags.n;
  if (flags.q) raw.q = *flags.q;
  if (flags.k) raw.k = *flags.k;
  if (flags.pk) raw.pk = *flags.pk;
  if (flags.rk) raw.rk = *flags.rk;
  if (flags.f) raw.f = *flags.f;
  if (flags.mu) raw.mu = *flags.mu;
  if (flags.seed) raw.seed = *flags.seed;
  return cmr::validate_spec(raw);
}

void write_out(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw cmr::Error(cmr::Errc::BadConfig, "cannot open output " + out_path);
  out << text;
}

// "3", "1,2,5" or "1:7"
std::vector<int> parse_rk_values(const std::string& text) {
  std::vector<int> values;
  auto colon = text.find(':');
  if (colon != std::string::npos) {
    int lo = std::stoi(text.substr(0, colon));
    int hi = std::stoi(text.substr(colon + 1));
    for (int v = lo; v <= hi; v++) values.push_back(v);
    return values;
  }
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) values.push_back(std::stoi(part));
  return values;
}

int run_verify(int instances, uint64_t seed) {
  using namespace cmr;
  int checked_gf2 = 0;
  for (int i = 0; i < instances; i++) {
    SplitMix64 rng(derive_seed(seed, static_cast<uint64_t>(i)));
    JobSpec raw;
    raw.k = 2 + static_cast<int>(rng.next_below(5));  // 2..6
    raw.pk = 1 + static_cast<int>(rng.next_below(static_cast<uint64_t>(raw.k)));
    raw.rk = 1 + static_cast<int>(rng.next_below(static_cast<uint64_t>(raw.pk)));
    raw.q = raw.k * (1 + static_cast<int>(rng.next_below(2)));
    raw.f = 8 + static_cast<int>(rng.next_below(9));  // 8..16, odd widths included
    raw.n = 1 + static_cast<int64_t>(rng.next_below(24));
    raw.mu = 1.0;
    raw.seed = rng.next();
    JobSpec spec = validate_spec(raw);

    Assignment assignment = assign_batch(spec);
    ReducerDistribution reducers = canonical_reducers(spec);
    MapOutcome outcome = execute_maps(assignment, spec, rng.next());
    ShuffleTranscript transcript = shuffle_coded(outcome, reducers, spec);

    double simulated = measured_load(transcript, spec);
    double recounted = brute_force_load(outcome, reducers, spec);
    if (simulated != recounted) {
      std::cerr << "verify: load mismatch on instance " << i << ": shuffle " << simulated
                << " vs oracle " << recounted << "\n";
      return 3;
    }
    decode_all(transcript, outcome, reducers, spec);
    if (spec.n <= 12 && checked_gf2 < instances / 2) {
      if (!brute_force_decode_check(transcript, outcome, reducers, spec)) {
        std::cerr << "verify: GF(2) sufficiency check failed on instance " << i << "\n";
        return 3;
      }
      checked_gf2++;
    }
  }
  std::cout << "verify: " << instances << " instances ok (" << checked_gf2
            << " with GF(2) elimination)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coded MapReduce shuffle simulator"};
  app.require_subcommand(1);

  SpecFlags run_flags, sweep_flags, analyze_flags;
  std::string run_strategy = "batch", run_scheme = "coded", run_out;
  int run_trials = 1;

  CLI::App* cmd_run = app.add_subcommand("run", "simulate one configuration");
  add_spec_flags(cmd_run, run_flags);
  cmd_run->add_option("--strategy", run_strategy, "batch | naive | conventional");
  cmd_run->add_option("--scheme", run_scheme, "coded | uncoded | conventional");
  cmd_run->add_option("--trials", run_trials, "number of seeded trials");
  cmd_run->add_option("--out", run_out, "write JSON report here instead of stdout");

  std::string sweep_rk = "1:1", sweep_strategy = "batch", sweep_out;
  int sweep_trials = 50;
  CLI::App* cmd_sweep = app.add_subcommand("sweep", "CSV over a range of rK");
  add_spec_flags(cmd_sweep, sweep_flags, false);
  cmd_sweep->add_option("--rk", sweep_rk, "rK values: lo:hi or comma list");
  cmd_sweep->add_option("--strategy", sweep_strategy, "batch | naive | conventional");
  cmd_sweep->add_option("--trials", sweep_trials, "trials per rK");
  cmd_sweep->add_option("--out", sweep_out, "write CSV here instead of stdout");

  std::string analyze_out;
  CLI::App* cmd_analyze = app.add_subcommand("analyze", "closed-form loads, bounds and gains");
  add_spec_flags(cmd_analyze, analyze_flags);
  cmd_analyze->add_option("--out", analyze_out, "write JSON here instead of stdout");

  int verify_instances = 100;
  uint64_t verify_seed = 1;
  CLI::App* cmd_verify =
      app.add_subcommand("verify", "cross-check the shuffle against brute-force oracles");
  cmd_verify->add_option("--instances", verify_instances, "random instances to check");
  cmd_verify->add_option("--seed", verify_seed, "oracle suite seed");

  app.add_subcommand("demo-wordcount", "end-to-end word counting walkthrough");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_run->parsed()) {
      cmr::RunConfig config;
      config.spec = resolve_spec(run_flags);
      config.strategy = cmr::strategy_from_name(run_strategy);
      config.scheme = cmr::scheme_from_name(run_scheme);
      config.trials = run_trials;
      config.seed = config.spec.seed;
      log_info("run: " + std::to_string(config.trials) + " trials");
      cmr::RunReport report = cmr::run_experiment(config);
      write_out(cmr::run_report_json(report), run_out);
      return 0;
    }
    if (cmd_sweep->parsed()) {
      cmr::SweepConfig config;
      config.base = resolve_spec(sweep_flags);
      config.strategy = cmr::strategy_from_name(sweep_strategy);
      config.rk_values = parse_rk_values(sweep_rk);
      config.trials = sweep_trials;
      config.seed = config.base.seed;
      for (int rk : config.rk_values) {
        if (rk < 1 || rk > config.base.pk)
          throw cmr::Error(cmr::Errc::BadConfig,
                           "rk " + std::to_string(rk) + " outside [1, pk]");
      }
      log_info("sweep over " + std::to_string(config.rk_values.size()) + " rK values");
      write_out(cmr::sweep_csv(config), sweep_out);
      return 0;
    }
    if (cmd_analyze->parsed()) {
      cmr::JobSpec spec = resolve_spec(analyze_flags);
      write_out(cmr::bounds_report_json(spec, cmr::bounds_report(spec)), analyze_out);
      return 0;
    }
    if (cmd_verify->parsed()) {
      return run_verify(verify_instances, verify_seed);
    }
    // demo-wordcount
    cmr::wordcount::Report report = cmr::wordcount::run();
    cmr::wordcount::print(report, std::cout);
    return report.ok ? 0 : 3;
  } catch (const cmr::DecodeError& e) {
    std::cerr << "decode failure: " << e.what() << "\n";
    return 3;
  } catch (const cmr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

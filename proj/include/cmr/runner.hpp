#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmr/analysis.hpp"
#include "cmr/assignment.hpp"
#include "cmr/shuffle.hpp"

namespace cmr {

struct RunConfig {
  JobSpec spec;  // validated
  Strategy strategy = Strategy::Batch;
  Scheme scheme = Scheme::Coded;
  int trials = 50;
  uint64_t seed = 0;  // experiment seed; trial t uses derive_seed(seed, t)
};

struct RunReport {
  RunConfig config;
  std::vector<double> trial_loads;
  double mean_load = 0;
  BoundsReport bounds;
  bool decode_ok = false;
};

// assignment -> map execution -> shuffle -> decode (+ ground-truth compare),
// over config.trials seeded trials.
RunReport run_experiment(const RunConfig& config);

// JSON object for `run` output; reports raw and padded N.
std::string run_report_json(const RunReport& report);

// JSON object for `analyze` output.
std::string bounds_report_json(const JobSpec& spec, const BoundsReport& report);

struct SweepConfig {
  JobSpec base;  // validated; rk is overridden per row
  Strategy strategy = Strategy::Batch;
  std::vector<int> rk_values;
  int trials = 50;
  uint64_t seed = 0;
};

// One CSV row per rK value: analytic loads and bounds, simulated mean coded
// and uncoded loads, Map timing means. Byte-stable for a fixed config.
std::string sweep_csv(const SweepConfig& config);

// JSON <-> JobSpec with fields {"n","q","k","pk","rk","f","mu","seed"}
// (pk, rk as integers). Extra fields are rejected by `strict`.
JobSpec spec_from_json(const std::string& text);
std::string spec_to_json(const JobSpec& spec);

// {"by_server": [[...], ...]}
std::string assignment_to_json(const Assignment& assignment);

}  // namespace cmr

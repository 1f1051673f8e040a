#include "cmr/runner.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cmr/map_exec.hpp"
#include "cmr/rng.hpp"

namespace cmr {

using nlohmann::json;

namespace {

// 6 significant digits, fixed narrow format for byte-stable CSV
std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

json spec_json_obj(const JobSpec& spec) {
  return json{{"n", spec.n_raw}, {"q", spec.q}, {"k", spec.k},   {"pk", spec.pk},
              {"rk", spec.rk},   {"f", spec.f}, {"mu", spec.mu}, {"seed", spec.seed}};
}

json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

json bounds_json_obj(const BoundsReport& b) {
  return json{{"l_conv", b.l_conv},
              {"l_uncoded", b.l_uncoded},
              {"l_cmr", b.l_cmr},
              {"lower_cutset1", b.lower_cutset1},
              {"lower_cutset2", b.lower_cutset2},
              {"lower_max", b.lower_max},
              {"s_star", b.s_star},
              {"repetition_gain", finite_or_null(b.repetition_gain)},
              {"coding_gain", b.coding_gain},
              {"overall_gain", finite_or_null(b.overall_gain)},
              {"gap_ratio", finite_or_null(b.gap_ratio)},
              {"degenerate", b.degenerate}};
}

}  // namespace

RunReport run_experiment(const RunConfig& config) {
  RunReport report;
  report.config = config;
  const JobSpec& spec = config.spec;

  Assignment assignment = make_assignment(spec, config.strategy);
  ReducerDistribution reducers = canonical_reducers(spec);

  double sum = 0;
  report.decode_ok = true;
  for (int t = 0; t < config.trials; t++) {
    MapOutcome outcome =
        execute_maps(assignment, spec, derive_seed(config.seed, static_cast<uint64_t>(t)));
    ShuffleTranscript transcript = run_shuffle(outcome, reducers, spec, config.scheme);
    double load = measured_load(transcript, spec);
    report.trial_loads.push_back(load);
    sum += load;
    auto recovered = decode_all(transcript, outcome, reducers, spec);  // throws on failure
    // recovered values must equal the generator's ground truth
    for (int server = 1; server <= spec.k && report.decode_ok; server++) {
      for (int64_t key : reducers.by_server[static_cast<size_t>(server)]) {
        for (int64_t n = 1; n <= spec.n; n++) {
          if (!(recovered[static_cast<size_t>(server)].at(key, n) == outcome.values.value(key, n))) {
            report.decode_ok = false;
            break;
          }
        }
        if (!report.decode_ok) break;
      }
    }
  }
  if (!report.decode_ok)
    throw DecodeError(0, 0, 0, "recovered values differ from the map output");
  report.mean_load = sum / config.trials;
  report.bounds = bounds_report(spec);
  return report;
}

std::string run_report_json(const RunReport& report) {
  const JobSpec& spec = report.config.spec;
  json j;
  j["spec"] = spec_json_obj(spec);
  j["n_raw"] = spec.n_raw;
  j["n_padded"] = spec.n;
  j["g"] = spec.g;
  j["strategy"] = strategy_name(report.config.strategy);
  j["scheme"] = scheme_name(report.config.scheme);
  j["trials"] = report.config.trials;
  j["seed"] = report.config.seed;
  j["trial_loads"] = report.trial_loads;
  j["mean_load"] = report.mean_load;
  j["decode_ok"] = report.decode_ok;
  j["analysis"] = bounds_json_obj(report.bounds);
  return j.dump(2) + "\n";
}

std::string bounds_report_json(const JobSpec& spec, const BoundsReport& report) {
  json j;
  j["spec"] = spec_json_obj(spec);
  j["n_padded"] = spec.n;
  j["g"] = spec.g;
  j["analysis"] = bounds_json_obj(report);
  return j.dump(2) + "\n";
}

std::string sweep_csv(const SweepConfig& config) {
  std::ostringstream out;
  out << "rk,l_conv,l_uncoded,l_cmr,lower,gap,rep_gain,coding_gain,"
         "sim_coded,sim_uncoded,mean_subfile_time,mean_overall_time\n";
  for (int rk : config.rk_values) {
    JobSpec raw = config.base;
    raw.n = config.base.n_raw;
    raw.rk = rk;
    JobSpec spec = validate_spec(raw);
    BoundsReport bounds = bounds_report(spec);

    Assignment assignment = make_assignment(spec, config.strategy);
    ReducerDistribution reducers = canonical_reducers(spec);
    double coded_sum = 0, uncoded_sum = 0;
    for (int t = 0; t < config.trials; t++) {
      MapOutcome outcome =
          execute_maps(assignment, spec, derive_seed(config.seed, static_cast<uint64_t>(t)));
      coded_sum += measured_load(shuffle_coded(outcome, reducers, spec), spec);
      uncoded_sum += measured_load(shuffle_uncoded(outcome, reducers, spec), spec);
    }

    TimingModel timing = make_timing(spec);
    double mean_one = mean_subfile_time(timing, spec);
    double mean_all = mean_overall_time(timing, spec);

    out << rk << "," << fmt6(bounds.l_conv) << "," << fmt6(bounds.l_uncoded) << ","
        << fmt6(bounds.l_cmr) << "," << fmt6(bounds.lower_max) << "," << fmt6(bounds.gap_ratio)
        << "," << fmt6(bounds.repetition_gain) << "," << fmt6(bounds.coding_gain) << ","
        << fmt6(coded_sum / config.trials) << "," << fmt6(uncoded_sum / config.trials) << ","
        << fmt6(mean_one) << "," << fmt6(mean_all) << "\n";
  }
  return out.str();
}

JobSpec spec_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::BadConfig, std::string("bad JSON: ") + e.what());
  }
  JobSpec raw;
  try {
    raw.n = j.at("n").get<int64_t>();
    raw.q = j.at("q").get<int64_t>();
    raw.k = j.at("k").get<int>();
    raw.pk = j.at("pk").get<int>();
    raw.rk = j.at("rk").get<int>();
    if (j.contains("f")) raw.f = j.at("f").get<int>();
    if (j.contains("mu")) raw.mu = j.at("mu").get<double>();
    if (j.contains("seed")) raw.seed = j.at("seed").get<uint64_t>();
  } catch (const json::exception& e) {
    throw Error(Errc::BadConfig, std::string("bad spec JSON: ") + e.what());
  }
  return validate_spec(raw);
}

std::string spec_to_json(const JobSpec& spec) { return spec_json_obj(spec).dump(2) + "\n"; }

std::string assignment_to_json(const Assignment& assignment) {
  json rows = json::array();
  for (size_t srv = 1; srv < assignment.by_server.size(); srv++)
    rows.push_back(assignment.by_server[srv]);
  return json{{"by_server", rows}}.dump(2) + "\n";
}

}  // namespace cmr

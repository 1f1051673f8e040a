#pragma once

#include "cmr/model.hpp"

namespace cmr {

// Straggler draw + value materialization. For each subfile independently,
// A'_n is a uniform rK-subset of A_n drawn from a stream keyed by
// (trial_seed, n); when r = p no randomness is consumed and A'_n = A_n.
// Values come from the generator keyed by (spec.seed, q, n).
MapOutcome execute_maps(const Assignment& assignment, const JobSpec& spec, uint64_t trial_seed);

// Same straggler draw, caller-supplied value table (e.g. a real Map function).
MapOutcome execute_maps(const Assignment& assignment, const JobSpec& spec, uint64_t trial_seed,
                        ValueTable values);

// |{n : A'_n = server_set}| — exact count, not the expectation.
// Throws BadSetSize unless |server_set| = rK.
int64_t subfiles_shared_by(const MapOutcome& outcome, const JobSpec& spec,
                           const std::vector<int>& server_set);

// Processor-sharing Map timing: pK i.i.d. exponential task clocks of rate
// mu/(pN); a subfile finishes when the rK-th of them fires.
struct TimingModel {
  double mu = 1.0;
  double pn = 1.0;

  double rate_per_task() const { return mu / pn; }
};

TimingModel make_timing(const JobSpec& spec);

// Density of the per-subfile completion time S_n (rK-th order statistic).
double pdf_subfile_time(const TimingModel& t, const JobSpec& spec, double s);

// Closed-form CDF of S_n (alternating binomial sum); round-off clamped to
// [0,1] within 1e-9.
double cdf_subfile_time(const TimingModel& t, const JobSpec& spec, double s);

// E{S_n} = (pN/mu) * sum_{j=1}^{rK} 1/(pK+1-j)
double mean_subfile_time(const TimingModel& t, const JobSpec& spec);

// E{S} = integral of 1 - F_{S_n}(s)^N, adaptive quadrature with relative
// tolerance 1e-5; throws QuadratureFailure if the refinement budget runs out.
double mean_overall_time(const TimingModel& t, const JobSpec& spec);

}  // namespace cmr

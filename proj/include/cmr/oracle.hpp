#pragma once

#include <functional>

#include "cmr/map_exec.hpp"
#include "cmr/model.hpp"

namespace cmr {

// Independent recount of the coded shuffle traffic straight from the raw
// A'_n sets: pure integer arithmetic, no bit strings, no code shared with
// the shuffle module. Throws TooLarge for K > 10.
double brute_force_load(const MapOutcome& outcome, const ReducerDistribution& reducers,
                        const JobSpec& spec);

// Treats every received message as a GF(2) linear equation over all bits
// unknown at each server and checks by Gaussian elimination that the needed
// bits are determined and equal to the ground truth. Throws TooLarge for
// K > 10.
bool brute_force_decode_check(const ShuffleTranscript& transcript, const MapOutcome& outcome,
                              const ReducerDistribution& reducers, const JobSpec& spec);

struct OrderStatSample {
  double mean = 0;
  std::vector<double> sorted;  // all samples, ascending
};

// Monte-Carlo rK-th order statistic of pK i.i.d. exponentials with rate
// mu/(pN).
OrderStatSample empirical_order_statistic(const TimingModel& t, const JobSpec& spec,
                                          int64_t samples, uint64_t seed);

// Kolmogorov-Smirnov distance between a sorted sample and a CDF.
double ks_distance(const std::vector<double>& sorted, const std::function<double(double)>& cdf);

}  // namespace cmr

#pragma once

#include "cmr/model.hpp"

namespace cmr {

// QN(1 - 1/K)
double load_conventional(const JobSpec& spec);
// QN(1 - r)
double load_uncoded(const JobSpec& spec);
// QN/K (1/r - 1); the o(N) term is reported as zero, simulation carries the
// finite-N gap.
double load_cmr(const JobSpec& spec);

struct LowerBound {
  double value = 0;     // max of the two cut-set bounds
  double cutset1 = 0;   // QN(1-r)/(K-1)
  double cutset2 = 0;   // max_s s QN (1/K - r/floor(K/s))
  int s_star = 1;       // argmax of the second bound, smallest s on ties
};

// Both cut-set bounds; floors evaluated in integer arithmetic.
LowerBound lower_bound(const JobSpec& spec);

// load_cmr / lower_bound. Throws DegenerateBound when the bound is zero.
double gap_ratio(const JobSpec& spec);

struct Gains {
  double repetition = 1;  // (1 - 1/K) / (1 - r)
  double coding = 1;      // rK
  double overall = 1;     // product = L_conv / L_CMR
};

Gains gains(const JobSpec& spec);

struct BoundsReport {
  double l_conv = 0;
  double l_uncoded = 0;
  double l_cmr = 0;
  double lower_cutset1 = 0;
  double lower_cutset2 = 0;
  double lower_max = 0;
  int s_star = 1;
  double repetition_gain = 1;
  double coding_gain = 1;
  double overall_gain = 1;
  double gap_ratio = 0;     // +inf when the lower bound is degenerate
  bool degenerate = false;
};

BoundsReport bounds_report(const JobSpec& spec);

}  // namespace cmr

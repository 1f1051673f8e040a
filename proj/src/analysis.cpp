#include "cmr/analysis.hpp"

#include <limits>

namespace cmr {

double load_conventional(const JobSpec& spec) {
  double qn = static_cast<double>(spec.q) * static_cast<double>(spec.n);
  return qn * (1.0 - 1.0 / spec.k);
}

double load_uncoded(const JobSpec& spec) {
  double qn = static_cast<double>(spec.q) * static_cast<double>(spec.n);
  return qn * (1.0 - spec.r());
}

double load_cmr(const JobSpec& spec) {
  double qn = static_cast<double>(spec.q) * static_cast<double>(spec.n);
  return qn / spec.k * (static_cast<double>(spec.k) / spec.rk - 1.0);
}

LowerBound lower_bound(const JobSpec& spec) {
  LowerBound out;
  // first bound: QN(1-r)/(K-1) = QN(K-rK)/(K(K-1)); zero for K = 1
  if (spec.k > 1) {
    out.cutset1 = static_cast<double>(spec.q) * static_cast<double>(spec.n) *
                  static_cast<double>(spec.k - spec.rk) /
                  (static_cast<double>(spec.k) * static_cast<double>(spec.k - 1));
  }
  // second bound: s QN (1/K - r/floor(K/s)) = s QN (floor(K/s) - rK) / (K floor(K/s)).
  // compare candidates exactly as fractions num_s/(K*fl_s)
  __int128 best_num = 0;
  int64_t best_den = 0;
  int best_s = 1;
  bool have = false;
  for (int s = 1; s <= spec.k; s++) {
    int64_t fl = spec.k / s;
    __int128 num = static_cast<__int128>(s) * spec.q * spec.n * (fl - spec.rk);
    int64_t den = static_cast<int64_t>(spec.k) * fl;
    if (!have || num * best_den > best_num * den) {
      best_num = num;
      best_den = den;
      best_s = s;
      have = true;
    }
  }
  out.s_star = best_s;
  out.cutset2 = static_cast<double>(best_num) / static_cast<double>(best_den);
  out.value = out.cutset1 > out.cutset2 ? out.cutset1 : out.cutset2;
  return out;
}

double gap_ratio(const JobSpec& spec) {
  LowerBound lb = lower_bound(spec);
  if (!(lb.value > 0.0))
    throw Error(Errc::DegenerateBound, "lower bound is zero; gap ratio undefined");
  return load_cmr(spec) / lb.value;
}

Gains gains(const JobSpec& spec) {
  Gains g;
  double one_minus_r = 1.0 - spec.r();
  if (one_minus_r > 0.0) {
    g.repetition = (1.0 - 1.0 / spec.k) / one_minus_r;
    g.coding = static_cast<double>(spec.rk);
    g.overall = g.repetition * g.coding;
  } else {
    g.repetition = std::numeric_limits<double>::infinity();
    g.coding = static_cast<double>(spec.rk);
    g.overall = std::numeric_limits<double>::infinity();
  }
  return g;
}

BoundsReport bounds_report(const JobSpec& spec) {
  BoundsReport r;
  r.l_conv = load_conventional(spec);
  r.l_uncoded = load_uncoded(spec);
  r.l_cmr = load_cmr(spec);
  LowerBound lb = lower_bound(spec);
  r.lower_cutset1 = lb.cutset1;
  r.lower_cutset2 = lb.cutset2;
  r.lower_max = lb.value;
  r.s_star = lb.s_star;
  Gains g = gains(spec);
  r.repetition_gain = g.repetition;
  r.coding_gain = g.coding;
  r.overall_gain = g.overall;
  if (lb.value > 0.0) {
    r.gap_ratio = r.l_cmr / lb.value;
  } else {
    r.gap_ratio = std::numeric_limits<double>::infinity();
    r.degenerate = true;
  }
  return r;
}

}  // namespace cmr

#include "cmr/map_exec.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cmr/combinatorics.hpp"
#include "cmr/rng.hpp"

namespace cmr {

namespace {

MapOutcome draw_stragglers(const Assignment& assignment, const JobSpec& spec,
                           uint64_t trial_seed) {
  MapOutcome out;
  out.mapped_by_server.assign(static_cast<size_t>(spec.k) + 1, {});
  out.mappers_of_subfile.assign(static_cast<size_t>(spec.n) + 1, {});
  out.mapper_mask.assign(static_cast<size_t>(spec.n) + 1, 0);
  for (int64_t n = 1; n <= spec.n; n++) {
    const auto& candidates = assignment.by_subfile[static_cast<size_t>(n)];
    std::vector<int> finished;
    if (spec.rk == spec.pk) {
      finished = candidates;
    } else {
      SplitMix64 rng(derive_seed(trial_seed, static_cast<uint64_t>(n)));
      finished = draw_subset(rng, candidates, static_cast<size_t>(spec.rk));
    }
    out.mapper_mask[static_cast<size_t>(n)] = mask_of(finished);
    for (int srv : finished) out.mapped_by_server[static_cast<size_t>(srv)].push_back(static_cast<int>(n));
    out.mappers_of_subfile[static_cast<size_t>(n)] = std::move(finished);
  }
  return out;
}

}  // namespace

MapOutcome execute_maps(const Assignment& assignment, const JobSpec& spec, uint64_t trial_seed) {
  MapOutcome out = draw_stragglers(assignment, spec, trial_seed);
  out.values = ValueTable(spec.q, spec.n, spec.f);
  out.values.fill_keyed(spec.seed, spec.n_raw);
  return out;
}

MapOutcome execute_maps(const Assignment& assignment, const JobSpec& spec, uint64_t trial_seed,
                        ValueTable values) {
  if (values.keys() != spec.q || values.subfiles() != spec.n || values.value_bits() != spec.f)
    throw Error(Errc::ShapeError, "value table shape does not match spec");
  MapOutcome out = draw_stragglers(assignment, spec, trial_seed);
  out.values = std::move(values);
  return out;
}

int64_t subfiles_shared_by(const MapOutcome& outcome, const JobSpec& spec,
                           const std::vector<int>& server_set) {
  if (static_cast<int>(server_set.size()) != spec.rk) {
    std::ostringstream msg;
    msg << "server set has " << server_set.size() << " members, want rk=" << spec.rk;
    throw Error(Errc::BadSetSize, msg.str());
  }
  uint64_t want = mask_of(server_set);
  int64_t count = 0;
  for (int64_t n = 1; n <= spec.n; n++) {
    if (outcome.mapper_mask[static_cast<size_t>(n)] == want) count++;
  }
  return count;
}

TimingModel make_timing(const JobSpec& spec) { return TimingModel{spec.mu, spec.pn()}; }

double pdf_subfile_time(const TimingModel& t, const JobSpec& spec, double s) {
  if (s < 0) throw Error(Errc::NegativeTime, "pdf_subfile_time: s < 0");
  double rate = t.rate_per_task();
  double coeff = static_cast<double>(spec.k) / static_cast<double>(spec.n) * t.mu *
                 static_cast<double>(binomial(spec.pk - 1, spec.rk - 1));
  return coeff * std::pow(1.0 - std::exp(-rate * s), spec.rk - 1) *
         std::exp(-rate * (spec.pk - spec.rk + 1) * s);
}

double cdf_subfile_time(const TimingModel& t, const JobSpec& spec, double s) {
  if (s < 0) throw Error(Errc::NegativeTime, "cdf_subfile_time: s < 0");
  double rate = t.rate_per_task();
  double lead = static_cast<double>(spec.pk) * static_cast<double>(binomial(spec.pk - 1, spec.rk - 1));
  double sum = 0.0;
  for (int j = 0; j <= spec.rk - 1; j++) {
    double sign = ((spec.rk - 1 - j) % 2 == 0) ? 1.0 : -1.0;
    double term = static_cast<double>(binomial(spec.rk - 1, j)) *
                  (1.0 - std::exp(-rate * (spec.pk - j) * s)) / static_cast<double>(spec.pk - j);
    sum += sign * term;
  }
  double v = lead * sum;
  // alternating sum leaves ~1e-12 of round-off at the ends
  if (v < 0.0) v = 0.0;
  if (v > 1.0) v = 1.0;
  return v;
}

double mean_subfile_time(const TimingModel& t, const JobSpec& spec) {
  double sum = 0.0;
  for (int j = 1; j <= spec.rk; j++) sum += 1.0 / static_cast<double>(spec.pk + 1 - j);
  return t.pn / t.mu * sum;
}

namespace {

// Adaptive Simpson with absolute budget derived from the caller's relative
// tolerance; throws QuadratureFailure past the depth limit.
double simpson(double fa, double fm, double fb, double a, double b) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adapt(const F& f, double a, double m, double b, double fa, double fm, double fb,
             double whole, double eps, int depth) {
  if (depth > 60) throw Error(Errc::QuadratureFailure, "quadrature depth limit reached");
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(fa, flm, fm, a, m);
  double right = simpson(fm, frm, fb, m, b);
  double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  return adapt(f, a, lm, m, fa, flm, fm, left, 0.5 * eps, depth + 1) +
         adapt(f, m, rm, b, fm, frm, fb, right, 0.5 * eps, depth + 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double eps_abs) {
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  return adapt(f, a, m, b, fa, fm, fb, simpson(fa, fm, fb, a, b), eps_abs, 0);
}

}  // namespace

double mean_overall_time(const TimingModel& t, const JobSpec& spec) {
  const double n = static_cast<double>(spec.n);
  auto tail = [&](double s) {
    double cdf = cdf_subfile_time(t, spec, s);
    if (cdf <= 0.0) return 1.0;
    // 1 - cdf^N without overflow for large N
    double logp = n * std::log(cdf);
    if (logp < -700.0) return 1.0;
    return -std::expm1(logp);
  };
  // truncate where F^N > 1 - 1e-9, i.e. N*log F > log(1 - 1e-9)
  double cut = std::log1p(-1e-9);
  double hi = mean_subfile_time(t, spec);
  while (static_cast<double>(n) * std::log(std::max(cdf_subfile_time(t, spec, hi), 1e-300)) < cut)
    hi *= 2.0;
  // coarse pass for the scale, then refine at relative tolerance 1e-5
  double coarse = integrate(tail, 0.0, hi, 1e-6 * hi);
  double eps_abs = 1e-5 * std::max(coarse, 1e-12);
  return integrate(tail, 0.0, hi, eps_abs);
}

}  // namespace cmr

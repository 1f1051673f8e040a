#include "cmr/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cmr/combinatorics.hpp"
#include "cmr/rng.hpp"

namespace cmr {

JobSpec validate_spec(const JobSpec& raw) {
  JobSpec s = raw;
  if (s.k < 1) throw Error(Errc::BadConfig, "k must be >= 1");
  if (s.n < 1) throw Error(Errc::BadConfig, "n must be >= 1");
  if (s.q < 1) throw Error(Errc::BadConfig, "q must be >= 1");
  if (s.f < 1) throw Error(Errc::BadConfig, "f must be >= 1");
  if (!(s.mu > 0)) throw Error(Errc::BadConfig, "mu must be > 0");
  if (s.pk < 1 || s.pk > s.k) {
    std::ostringstream msg;
    msg << "pk must lie in [1, k]; got pk=" << s.pk << " with k=" << s.k;
    throw Error(Errc::BadConfig, msg.str());
  }
  if (s.rk > s.pk) {
    std::ostringstream msg;
    msg << "r exceeds p: rk=" << s.rk << " > pk=" << s.pk;
    throw Error(Errc::RExceedsP, msg.str());
  }
  if (s.rk < 1) throw Error(Errc::BadConfig, "rk must be >= 1");
  if (s.q % s.k != 0) {
    std::ostringstream msg;
    msg << "q=" << s.q << " is not divisible by k=" << s.k;
    throw Error(Errc::QNotDivisibleByK, msg.str());
  }
  s.n_raw = raw.n;
  int64_t batches = binomial(s.k, s.pk);
  s.g = (s.n_raw + batches - 1) / batches;  // pad up with empty subfiles
  s.n = s.g * batches;
  return s;
}

namespace {
int fraction_times_k(double x, int k, Errc errc, const char* name) {
  double scaled = x * k;
  double rounded = std::round(scaled);
  if (std::abs(scaled - rounded) > 1e-9) {
    std::ostringstream msg;
    msg << name << "*k = " << scaled << " is not an integer";
    throw Error(errc, msg.str());
  }
  return static_cast<int>(rounded);
}
}  // namespace

JobSpec validate_spec_fractions(int64_t n, int64_t q, int k, double p, double r, int f, double mu,
                                uint64_t seed) {
  JobSpec raw;
  raw.n = n;
  raw.q = q;
  raw.k = k;
  raw.pk = fraction_times_k(p, k, Errc::NonIntegerPK, "p");
  raw.rk = fraction_times_k(r, k, Errc::NonIntegerRK, "r");
  raw.f = f;
  raw.mu = mu;
  raw.seed = seed;
  return validate_spec(raw);
}

Assignment Assignment::from_by_server(int k, int64_t n, std::vector<std::vector<int>> by_server) {
  Assignment a;
  a.by_server = std::move(by_server);
  a.by_subfile.assign(static_cast<size_t>(n) + 1, {});
  for (int srv = 1; srv <= k; srv++) {
    for (int sub : a.by_server[static_cast<size_t>(srv)]) {
      a.by_subfile[static_cast<size_t>(sub)].push_back(srv);
    }
  }
  for (auto& v : a.by_subfile) std::sort(v.begin(), v.end());
  a.check_consistent();
  return a;
}

Assignment Assignment::from_by_subfile(int k, int64_t n, std::vector<std::vector<int>> by_subfile) {
  Assignment a;
  a.by_subfile = std::move(by_subfile);
  a.by_server.assign(static_cast<size_t>(k) + 1, {});
  for (int64_t sub = 1; sub <= n; sub++) {
    for (int srv : a.by_subfile[static_cast<size_t>(sub)]) {
      a.by_server[static_cast<size_t>(srv)].push_back(static_cast<int>(sub));
    }
  }
  for (auto& v : a.by_server) std::sort(v.begin(), v.end());
  a.check_consistent();
  return a;
}

void Assignment::check_consistent() const {
  int k = servers();
  int64_t n = subfiles();
  int64_t edges_fwd = 0;
  for (int srv = 1; srv <= k; srv++) {
    const auto& subs = by_server[static_cast<size_t>(srv)];
    for (size_t i = 0; i < subs.size(); i++) {
      int sub = subs[i];
      if (sub < 1 || sub > n) throw Error(Errc::ShapeError, "subfile id out of range");
      if (i > 0 && subs[i - 1] >= sub) throw Error(Errc::ShapeError, "by_server not sorted unique");
      const auto& back = by_subfile[static_cast<size_t>(sub)];
      if (!std::binary_search(back.begin(), back.end(), srv))
        throw Error(Errc::ShapeError, "by_server/by_subfile views disagree");
    }
    edges_fwd += static_cast<int64_t>(subs.size());
  }
  int64_t edges_bwd = 0;
  for (int64_t sub = 1; sub <= n; sub++)
    edges_bwd += static_cast<int64_t>(by_subfile[static_cast<size_t>(sub)].size());
  if (edges_fwd != edges_bwd) throw Error(Errc::ShapeError, "by_server/by_subfile views disagree");
}

void ReducerDistribution::check_valid(int64_t q, int k) const {
  if (static_cast<int>(by_server.size()) != k + 1)
    throw Error(Errc::ShapeError, "reducer distribution has wrong server count");
  if (q % k != 0) throw Error(Errc::QNotDivisibleByK, "q not divisible by k");
  std::vector<char> seen(static_cast<size_t>(q) + 1, 0);
  for (int srv = 1; srv <= k; srv++) {
    const auto& keys = by_server[static_cast<size_t>(srv)];
    if (static_cast<int64_t>(keys.size()) != q / k)
      throw Error(Errc::ShapeError, "|W_k| != Q/K");
    for (int64_t key : keys) {
      if (key < 1 || key > q) throw Error(Errc::ShapeError, "key id out of range");
      if (seen[static_cast<size_t>(key)]) throw Error(Errc::ShapeError, "key reduced twice");
      seen[static_cast<size_t>(key)] = 1;
    }
  }
  // counts match, so every key is covered once
}

std::vector<int> ReducerDistribution::owner_of_key(int64_t q) const {
  std::vector<int> owner(static_cast<size_t>(q) + 1, 0);
  for (int srv = 1; srv < static_cast<int>(by_server.size()); srv++) {
    for (int64_t key : by_server[static_cast<size_t>(srv)]) owner[static_cast<size_t>(key)] = srv;
  }
  return owner;
}

ReducerDistribution canonical_reducers(const JobSpec& spec) {
  ReducerDistribution d;
  d.by_server.assign(static_cast<size_t>(spec.k) + 1, {});
  int64_t per = spec.q / spec.k;
  for (int srv = 1; srv <= spec.k; srv++) {
    auto& keys = d.by_server[static_cast<size_t>(srv)];
    keys.resize(static_cast<size_t>(per));
    std::iota(keys.begin(), keys.end(), (srv - 1) * per + 1);
  }
  d.check_valid(spec.q, spec.k);
  return d;
}

ReducerDistribution random_reducers(const JobSpec& spec, uint64_t seed) {
  std::vector<int64_t> keys(static_cast<size_t>(spec.q));
  std::iota(keys.begin(), keys.end(), 1);
  SplitMix64 rng(derive_seed(seed, 0x7265647563ULL));
  for (size_t i = keys.size(); i > 1; i--) {
    size_t j = static_cast<size_t>(rng.next_below(i));
    std::swap(keys[i - 1], keys[j]);
  }
  ReducerDistribution d;
  d.by_server.assign(static_cast<size_t>(spec.k) + 1, {});
  int64_t per = spec.q / spec.k;
  for (int srv = 1; srv <= spec.k; srv++) {
    auto& w = d.by_server[static_cast<size_t>(srv)];
    w.assign(keys.begin() + (srv - 1) * per, keys.begin() + srv * per);
    std::sort(w.begin(), w.end());
  }
  d.check_valid(spec.q, spec.k);
  return d;
}

ValueTable::ValueTable(int64_t q, int64_t n, int f)
    : q_(q), n_(n), f_(f), stride_((static_cast<size_t>(f) + 7) / 8) {
  data_.assign(static_cast<size_t>(q) * static_cast<size_t>(n) * stride_, 0);
}

BitString ValueTable::value(int64_t q, int64_t n) const {
  BitString out;
  out.append_bits(raw(q, n), static_cast<size_t>(f_));
  return out;
}

void ValueTable::set(int64_t q, int64_t n, const BitString& v) {
  if (v.size_bits() != static_cast<size_t>(f_))
    throw Error(Errc::ShapeError, "value width != f");
  std::copy(v.bytes().begin(), v.bytes().end(), data_.begin() + static_cast<long>(offset(q, n)));
}

void ValueTable::fill_keyed(uint64_t job_seed, int64_t n_raw) {
  for (int64_t q = 1; q <= q_; q++) {
    for (int64_t n = 1; n <= std::min(n_raw, n_); n++) {
      BitString v = BitString::keyed_random(
          derive_seed(job_seed, static_cast<uint64_t>(q), static_cast<uint64_t>(n)),
          static_cast<size_t>(f_));
      set(q, n, v);
    }
  }
  // n > n_raw are padding subfiles: all-zero values, already zeroed
}

}  // namespace cmr

#include "cmr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "cmr/rng.hpp"

// Everything here recounts from the raw A'_n sets on purpose: the point of
// these checks is that they share no counting or bit-twiddling code with the
// shuffle module.

namespace cmr {

namespace {

void guard_size(const JobSpec& spec) {
  if (spec.k > 10) throw Error(Errc::TooLarge, "brute-force oracle is capped at k <= 10");
}

// all (rk+1)-subsets of {1..k}, plain recursion
void enum_subsets(int k, int size, std::vector<int>& cur, int next,
                  const std::function<void(const std::vector<int>&)>& fn) {
  if (static_cast<int>(cur.size()) == size) {
    fn(cur);
    return;
  }
  for (int v = next; v <= k; v++) {
    cur.push_back(v);
    enum_subsets(k, size, cur, v + 1, fn);
    cur.pop_back();
  }
}

std::vector<int> without(const std::vector<int>& set, int member) {
  std::vector<int> out;
  for (int v : set) {
    if (v != member) out.push_back(v);
  }
  return out;
}

int64_t count_exact_mappers(const MapOutcome& outcome, const std::vector<int>& servers) {
  int64_t count = 0;
  for (size_t n = 1; n < outcome.mappers_of_subfile.size(); n++) {
    if (outcome.mappers_of_subfile[n] == servers) count++;
  }
  return count;
}

}  // namespace

double brute_force_load(const MapOutcome& outcome, const ReducerDistribution& reducers,
                        const JobSpec& spec) {
  guard_size(spec);
  int64_t keys_per = spec.q / spec.k;
  (void)reducers;  // load depends only on |W_k| = Q/K, which is fixed
  int64_t total_bits = 0;
  std::vector<int> cur;
  enum_subsets(spec.k, spec.rk + 1, cur, 1, [&](const std::vector<int>& subset) {
    // bits each member still needs from exactly this subset
    std::vector<int64_t> vbits(subset.size());
    for (size_t ki = 0; ki < subset.size(); ki++) {
      vbits[ki] =
          keys_per * count_exact_mappers(outcome, without(subset, subset[ki])) * spec.f;
    }
    for (size_t si = 0; si < subset.size(); si++) {
      int64_t longest = 0;
      for (size_t ki = 0; ki < subset.size(); ki++) {
        if (ki == si) continue;
        // index of the sender among the receivers of V^k, ascending
        std::vector<int> receivers = without(subset, subset[ki]);
        int64_t idx = std::find(receivers.begin(), receivers.end(), subset[si]) -
                      receivers.begin();
        int64_t seg = vbits[ki] / spec.rk + (idx < vbits[ki] % spec.rk ? 1 : 0);
        longest = std::max(longest, seg);
      }
      total_bits += longest;
    }
  });
  return static_cast<double>(total_bits) / static_cast<double>(spec.f);
}

namespace {

// dense GF(2) row: coefficient words + right-hand bit
struct Row {
  std::vector<uint64_t> words;
  int rhs = 0;

  bool test(size_t col) const { return (words[col >> 6] >> (col & 63)) & 1u; }
  void flip(size_t col) { words[col >> 6] ^= (uint64_t(1) << (col & 63)); }
  void xor_in(const Row& other) {
    for (size_t i = 0; i < words.size(); i++) words[i] ^= other.words[i];
    rhs ^= other.rhs;
  }
  bool any() const {
    for (uint64_t w : words)
      if (w) return true;
    return false;
  }
};

struct ServerView {
  // value (q,n) -> variable base index, for every value not mapped locally
  std::unordered_map<int64_t, size_t> var_base;
  size_t num_vars = 0;
};

int64_t value_id(const JobSpec& spec, int64_t q, int64_t n) { return (q - 1) * spec.n + (n - 1); }

ServerView build_view(const MapOutcome& outcome, const JobSpec& spec, int server) {
  ServerView view;
  for (int64_t q = 1; q <= spec.q; q++) {
    for (int64_t n = 1; n <= spec.n; n++) {
      if (!outcome.mapped_at(server, n)) {
        view.var_base[value_id(spec, q, n)] = view.num_vars;
        view.num_vars += static_cast<size_t>(spec.f);
      }
    }
  }
  return view;
}

// the (q,n) layout of V^{receiver} for mapper set `mappers`, rebuilt from raw sets
std::vector<std::pair<int64_t, int64_t>> vset_layout(const MapOutcome& outcome,
                                                     const ReducerDistribution& reducers,
                                                     int receiver,
                                                     const std::vector<int>& mappers) {
  std::vector<std::pair<int64_t, int64_t>> ids;
  for (int64_t key : reducers.by_server[static_cast<size_t>(receiver)]) {
    for (size_t n = 1; n < outcome.mappers_of_subfile.size(); n++) {
      if (outcome.mappers_of_subfile[n] == mappers) ids.emplace_back(key, static_cast<int64_t>(n));
    }
  }
  return ids;
}

// contribution of one value bit to an equation: either a variable column or a
// known bit folded into the rhs
void add_bit(Row& row, const ServerView& view, const MapOutcome& outcome, const JobSpec& spec,
             int64_t key, int64_t n, int64_t bit, int server) {
  if (outcome.mapped_at(server, n)) {
    BitString v = outcome.values.value(key, n);
    if (v.bit(static_cast<size_t>(bit))) row.rhs ^= 1;
  } else {
    size_t base = view.var_base.at(value_id(spec, key, n));
    row.flip(base + static_cast<size_t>(bit));
  }
}

}  // namespace

bool brute_force_decode_check(const ShuffleTranscript& transcript, const MapOutcome& outcome,
                              const ReducerDistribution& reducers, const JobSpec& spec) {
  guard_size(spec);
  for (int server = 1; server <= spec.k; server++) {
    ServerView view = build_view(outcome, spec, server);
    size_t words = (view.num_vars + 63) / 64 + 1;  // +1 keeps zero-var case sane

    std::vector<Row> rows;
    for (const Message& m : transcript.messages) {
      if (m.sender == server) continue;
      size_t bits = m.payload.size_bits();
      std::vector<Row> eqs(bits, Row{std::vector<uint64_t>(words, 0), 0});
      for (size_t b = 0; b < bits; b++) eqs[b].rhs = m.payload.bit(b) ? 1 : 0;

      if (m.tag == "coded") {
        for (int receiver : m.subset) {
          if (receiver == m.sender) continue;
          std::vector<int> mappers = without(m.subset, receiver);
          auto ids = vset_layout(outcome, reducers, receiver, mappers);
          int64_t total = static_cast<int64_t>(ids.size()) * spec.f;
          std::vector<int> rcv_sorted = without(m.subset, receiver);
          int64_t idx =
              std::find(rcv_sorted.begin(), rcv_sorted.end(), m.sender) - rcv_sorted.begin();
          int64_t seg = total / spec.rk + (idx < total % spec.rk ? 1 : 0);
          int64_t off = 0;
          for (int64_t j = 0; j < idx; j++)
            off += total / spec.rk + (j < total % spec.rk ? 1 : 0);
          for (int64_t b = 0; b < seg; b++) {
            int64_t global = off + b;
            int64_t vi = global / spec.f;
            add_bit(eqs[static_cast<size_t>(b)], view, outcome, spec, ids[static_cast<size_t>(vi)].first,
                    ids[static_cast<size_t>(vi)].second, global % spec.f, server);
          }
        }
      } else {
        // replay the unicast order to learn which value this slot carries
        size_t slot = 0;
        bool placed = false;
        size_t self = &m - transcript.messages.data();
        for (int dest = 1; dest <= spec.k && !placed; dest++) {
          for (int64_t key : reducers.by_server[static_cast<size_t>(dest)]) {
            if (placed) break;
            for (int64_t n = 1; n <= spec.n; n++) {
              if (outcome.mapped_at(dest, n)) continue;
              if (slot == self) {
                for (int64_t b = 0; b < spec.f; b++)
                  add_bit(eqs[static_cast<size_t>(b)], view, outcome, spec, key, n, b, server);
                placed = true;
                break;
              }
              slot++;
            }
          }
        }
        if (!placed) return false;  // transcript does not line up with the outcome
      }
      for (Row& r : eqs) rows.push_back(std::move(r));
    }

    // Gauss-Jordan to reduced row echelon form
    std::vector<size_t> pivot_of_row;
    std::unordered_map<size_t, size_t> row_of_pivot;
    size_t rank = 0;
    for (size_t col = 0; col < view.num_vars && rank < rows.size(); col++) {
      size_t sel = rank;
      while (sel < rows.size() && !rows[sel].test(col)) sel++;
      if (sel == rows.size()) continue;
      std::swap(rows[rank], rows[sel]);
      for (size_t r = 0; r < rows.size(); r++) {
        if (r != rank && rows[r].test(col)) rows[r].xor_in(rows[rank]);
      }
      pivot_of_row.push_back(col);
      row_of_pivot[col] = rank;
      rank++;
    }
    // inconsistent system would mean a corrupted transcript
    for (size_t r = rank; r < rows.size(); r++) {
      if (!rows[r].any() && rows[r].rhs) return false;
    }

    // every needed bit must be pinned down and match the generator's truth
    for (int64_t key : reducers.by_server[static_cast<size_t>(server)]) {
      for (int64_t n = 1; n <= spec.n; n++) {
        if (outcome.mapped_at(server, n)) continue;
        size_t base = view.var_base.at(value_id(spec, key, n));
        BitString truth = outcome.values.value(key, n);
        for (int64_t b = 0; b < spec.f; b++) {
          auto it = row_of_pivot.find(base + static_cast<size_t>(b));
          if (it == row_of_pivot.end()) return false;  // undetermined
          Row& row = rows[it->second];
          // determined only if the pivot is the row's sole support
          int ones = 0;
          for (uint64_t w : row.words) ones += __builtin_popcountll(w);
          if (ones != 1) return false;
          if (row.rhs != (truth.bit(static_cast<size_t>(b)) ? 1 : 0)) return false;
        }
      }
    }
  }
  return true;
}

OrderStatSample empirical_order_statistic(const TimingModel& t, const JobSpec& spec,
                                          int64_t samples, uint64_t seed) {
  OrderStatSample out;
  out.sorted.reserve(static_cast<size_t>(samples));
  SplitMix64 rng(derive_seed(seed, 0x6f726465727374ULL));
  double rate = t.rate_per_task();
  std::vector<double> clocks(static_cast<size_t>(spec.pk));
  for (int64_t i = 0; i < samples; i++) {
    for (double& c : clocks) c = -std::log(rng.next_unit()) / rate;
    std::nth_element(clocks.begin(), clocks.begin() + (spec.rk - 1), clocks.end());
    out.sorted.push_back(clocks[static_cast<size_t>(spec.rk - 1)]);
  }
  std::sort(out.sorted.begin(), out.sorted.end());
  out.mean = std::accumulate(out.sorted.begin(), out.sorted.end(), 0.0) /
             static_cast<double>(samples);
  return out;
}

double ks_distance(const std::vector<double>& sorted, const std::function<double(double)>& cdf) {
  double worst = 0;
  double n = static_cast<double>(sorted.size());
  for (size_t i = 0; i < sorted.size(); i++) {
    double F = cdf(sorted[i]);
    worst = std::max(worst, std::abs(F - static_cast<double>(i) / n));
    worst = std::max(worst, std::abs(static_cast<double>(i + 1) / n - F));
  }
  return worst;
}

}  // namespace cmr

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cmr/bitstring.hpp"
#include "cmr/error.hpp"

namespace cmr {

// All server, subfile and key indices are 1-based everywhere in this library,
// matching the slot/load model conventions. Per-server containers waste
// index 0 on purpose.

// Scalar job parameters. `n` is the padded subfile count (n = g * C(k, pk));
// `n_raw` keeps the requested count, the difference being empty subfiles
// whose values are all-zero F-bit strings.
struct JobSpec {
  int64_t n = 0;
  int64_t n_raw = 0;
  int64_t g = 0;
  int64_t q = 0;
  int k = 0;
  int pk = 0;
  int rk = 0;
  int f = 32;
  double mu = 1.0;
  uint64_t seed = 0;

  double p() const { return static_cast<double>(pk) / k; }
  double r() const { return static_cast<double>(rk) / k; }
  int64_t keys_per_server() const { return q / k; }
  // Map tasks per server, p*N; integral for every validated spec.
  double pn() const { return static_cast<double>(pk) * static_cast<double>(n) / k; }
};

// Checks ranges and divisibility, computes g and pads n up to g * C(k, pk).
// Throws Error with one of: BadConfig, RExceedsP, QNotDivisibleByK.
JobSpec validate_spec(const JobSpec& raw);

// Fraction front door: p and r given as fractions of k. Throws NonIntegerPK /
// NonIntegerRK when p*k or r*k is not an integer (tolerance 1e-9), then
// validates as above.
JobSpec validate_spec_fractions(int64_t n, int64_t q, int k, double p, double r, int f, double mu,
                                uint64_t seed);

// Bipartite subfile<->server map; the two views are kept consistent.
struct Assignment {
  std::vector<std::vector<int>> by_server;    // [1..k] -> sorted subfile ids (M_k)
  std::vector<std::vector<int>> by_subfile;   // [1..n] -> sorted server ids (A_n)

  int servers() const { return static_cast<int>(by_server.size()) - 1; }
  int64_t subfiles() const { return static_cast<int64_t>(by_subfile.size()) - 1; }

  static Assignment from_by_server(int k, int64_t n, std::vector<std::vector<int>> by_server);
  static Assignment from_by_subfile(int k, int64_t n, std::vector<std::vector<int>> by_subfile);

  // Throws ShapeError if the two views disagree or ids are out of range.
  void check_consistent() const;
};

// Which keys each server reduces (W_k).
struct ReducerDistribution {
  std::vector<std::vector<int64_t>> by_server;  // [1..k] -> sorted key ids

  // The three validity conditions: |W_k| = Q/K, pairwise disjoint, union = {1..Q}.
  void check_valid(int64_t q, int k) const;
  // key id -> reducing server
  std::vector<int> owner_of_key(int64_t q) const;
};

// W_k = {(k-1)Q/K + 1, ..., kQ/K}
ReducerDistribution canonical_reducers(const JobSpec& spec);
// Uniformly random valid distribution: a seeded permutation of the keys dealt
// into K consecutive blocks.
ReducerDistribution random_reducers(const JobSpec& spec, uint64_t seed);

// Dense store of the intermediate values v_qn, each exactly F bits.
class ValueTable {
public:
  ValueTable() = default;
  ValueTable(int64_t q, int64_t n, int f);

  int64_t keys() const { return q_; }
  int64_t subfiles() const { return n_; }
  int value_bits() const { return f_; }

  BitString value(int64_t q, int64_t n) const;
  const uint8_t* raw(int64_t q, int64_t n) const { return &data_[offset(q, n)]; }
  size_t value_bytes() const { return stride_; }

  void set(int64_t q, int64_t n, const BitString& v);

  // Deterministic fill keyed by (job_seed, q, n); subfiles past n_raw stay zero.
  void fill_keyed(uint64_t job_seed, int64_t n_raw);

private:
  size_t offset(int64_t q, int64_t n) const {
    return (static_cast<size_t>(q - 1) * static_cast<size_t>(n_) + static_cast<size_t>(n - 1)) *
           stride_;
  }
  int64_t q_ = 0;
  int64_t n_ = 0;
  int f_ = 0;
  size_t stride_ = 0;
  std::vector<uint8_t> data_;
};

// Which rK servers actually finished each subfile, plus the value store.
struct MapOutcome {
  std::vector<std::vector<int>> mapped_by_server;     // [1..k] -> sorted subfile ids (M'_k)
  std::vector<std::vector<int>> mappers_of_subfile;   // [1..n] -> sorted server ids (A'_n)
  std::vector<uint64_t> mapper_mask;                  // [1..n] -> bitmask of A'_n
  ValueTable values;

  bool mapped_at(int server, int64_t n) const {
    return (mapper_mask[static_cast<size_t>(n)] >> (server - 1)) & 1u;
  }
};

// One multicast slot on the shared link.
struct Message {
  int sender = 0;
  std::vector<int> subset;  // sorted; sender is a member (coded) or subset = all servers
  BitString payload;
  std::string tag;          // "coded" | "uncoded" | "conv"
};

struct ShuffleTranscript {
  std::vector<Message> messages;
  int64_t total_bits = 0;

  void push(Message m) {
    total_bits += static_cast<int64_t>(m.payload.size_bits());
    messages.push_back(std::move(m));
  }
};

}  // namespace cmr

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cmr/model.hpp"

namespace cmr {

enum class Scheme { Coded, Uncoded, Conventional };

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);  // throws BadConfig

// The (q, n) pairs behind V^k_S: values needed by server k and mapped at
// exactly the servers in exclusive_mask, in (q, n) lexicographic order.
std::vector<std::pair<int64_t, int64_t>> need_ids(const MapOutcome& outcome,
                                                  const ReducerDistribution& reducers, int server,
                                                  uint64_t exclusive_mask);

// Concatenated bits of the above (|need_ids| * F bits).
BitString need_set(const MapOutcome& outcome, const ReducerDistribution& reducers, int server,
                   uint64_t exclusive_mask);

// Coded multicast shuffle: for every (rK+1)-subset S (lexicographic order)
// and sender i in S ascending, the XOR of the rK zero-padded segments
// associated with i. Empty XORs are skipped.
ShuffleTranscript shuffle_coded(const MapOutcome& outcome, const ReducerDistribution& reducers,
                                const JobSpec& spec);

// One F-bit slot per missing value, sent by the lowest-indexed server that
// mapped the subfile.
ShuffleTranscript shuffle_uncoded(const MapOutcome& outcome, const ReducerDistribution& reducers,
                                  const JobSpec& spec);

// Unicast baseline for pK = rK = 1 outcomes; load is QN(1 - 1/K) exactly.
// Throws WrongAssignment when pK != 1.
ShuffleTranscript shuffle_conventional(const MapOutcome& outcome,
                                       const ReducerDistribution& reducers, const JobSpec& spec);

ShuffleTranscript run_shuffle(const MapOutcome& outcome, const ReducerDistribution& reducers,
                              const JobSpec& spec, Scheme scheme);

// Everything server k ends up with: one row per reduced key, all N subfiles.
struct RecoveredValues {
  int server = 0;
  std::vector<int64_t> keys;     // W_k, ascending
  std::vector<BitString> table;  // [key_index * N + (n-1)]

  const BitString& at(int64_t key, int64_t n) const;
};

// Replays the transcript at every server: local values read from the store,
// remote ones recovered by cancelling known segments out of the coded
// messages (or read directly for uncoded/conventional). Throws DecodeError
// if any needed value cannot be reconstructed.
std::vector<RecoveredValues> decode_all(const ShuffleTranscript& transcript,
                                        const MapOutcome& outcome,
                                        const ReducerDistribution& reducers, const JobSpec& spec);

// Communication load L: total payload bits / F.
double measured_load(const ShuffleTranscript& transcript, const JobSpec& spec);

// One JSON object per line: {"sender":k,"subset":[...],"bits":len,"tag":"..."}
std::string transcript_to_jsonl(const ShuffleTranscript& transcript);

}  // namespace cmr

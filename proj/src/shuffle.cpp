#include "cmr/shuffle.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "cmr/combinatorics.hpp"

namespace cmr {

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Coded: return "coded";
    case Scheme::Uncoded: return "uncoded";
    case Scheme::Conventional: return "conv";
  }
  return "?";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "coded") return Scheme::Coded;
  if (name == "uncoded") return Scheme::Uncoded;
  if (name == "conventional" || name == "conv") return Scheme::Conventional;
  throw Error(Errc::BadConfig, "unknown scheme: " + name);
}

namespace {

using GroupMap = std::unordered_map<uint64_t, std::vector<int64_t>>;

// subfiles grouped by their exact mapper set; lists stay ascending
GroupMap group_by_mappers(const MapOutcome& outcome) {
  GroupMap groups;
  for (size_t n = 1; n < outcome.mapper_mask.size(); n++)
    groups[outcome.mapper_mask[n]].push_back(static_cast<int64_t>(n));
  return groups;
}

const std::vector<int64_t>& group_of(const GroupMap& groups, uint64_t mask) {
  static const std::vector<int64_t> empty;
  auto it = groups.find(mask);
  return it == groups.end() ? empty : it->second;
}

// (q, n) lexicographic ids of V^server_{mask} given the subfile group of mask
std::vector<std::pair<int64_t, int64_t>> ids_in_group(const ReducerDistribution& reducers,
                                                      int server,
                                                      const std::vector<int64_t>& group) {
  std::vector<std::pair<int64_t, int64_t>> ids;
  ids.reserve(reducers.by_server[static_cast<size_t>(server)].size() * group.size());
  for (int64_t key : reducers.by_server[static_cast<size_t>(server)]) {
    for (int64_t n : group) ids.emplace_back(key, n);
  }
  return ids;
}

BitString concat_values(const ValueTable& values,
                        const std::vector<std::pair<int64_t, int64_t>>& ids) {
  BitString bits;
  size_t f = static_cast<size_t>(values.value_bits());
  for (auto [key, n] : ids) bits.append_bits(values.raw(key, n), f);
  return bits;
}

// Front-loaded near-equal split: segment `index` of `total` bits (0-based)
// gets ceil(total/parts) bits when index < total mod parts, floor otherwise.
int64_t segment_size(int64_t total, int parts, int index) {
  return total / parts + (index < total % parts ? 1 : 0);
}

int64_t segment_offset(int64_t total, int parts, int index) {
  int64_t base = total / parts;
  int64_t rem = total % parts;
  int64_t big = std::min<int64_t>(index, rem);
  return big * (base + 1) + (index - big) * base;
}

// position of `member` within sorted `subset` minus `skipped`
int position_without(const std::vector<int>& subset, int skipped, int member) {
  int pos = 0;
  for (int id : subset) {
    if (id == skipped) continue;
    if (id == member) return pos;
    pos++;
  }
  return -1;
}

}  // namespace

std::vector<std::pair<int64_t, int64_t>> need_ids(const MapOutcome& outcome,
                                                  const ReducerDistribution& reducers, int server,
                                                  uint64_t exclusive_mask) {
  std::vector<int64_t> group;
  for (size_t n = 1; n < outcome.mapper_mask.size(); n++) {
    if (outcome.mapper_mask[n] == exclusive_mask) group.push_back(static_cast<int64_t>(n));
  }
  return ids_in_group(reducers, server, group);
}

BitString need_set(const MapOutcome& outcome, const ReducerDistribution& reducers, int server,
                   uint64_t exclusive_mask) {
  return concat_values(outcome.values, need_ids(outcome, reducers, server, exclusive_mask));
}

ShuffleTranscript shuffle_coded(const MapOutcome& outcome, const ReducerDistribution& reducers,
                                const JobSpec& spec) {
  ShuffleTranscript transcript;
  GroupMap groups = group_by_mappers(outcome);
  for_each_subset_lex(spec.k, spec.rk + 1, [&](const std::vector<int>& subset) {
    uint64_t subset_mask = mask_of(subset);
    std::vector<BitString> vsets(subset.size());
    for (size_t ki = 0; ki < subset.size(); ki++) {
      uint64_t excl = subset_mask & ~(uint64_t(1) << (subset[ki] - 1));
      const auto& grp = group_of(groups, excl);
      if (!grp.empty())
        vsets[ki] = concat_values(outcome.values, ids_in_group(reducers, subset[ki], grp));
    }
    for (size_t si = 0; si < subset.size(); si++) {
      int sender = subset[si];
      BitString payload;
      for (size_t ki = 0; ki < subset.size(); ki++) {
        if (ki == si) continue;
        int pos = position_without(subset, subset[ki], sender);
        int64_t total = static_cast<int64_t>(vsets[ki].size_bits());
        int64_t len = segment_size(total, spec.rk, pos);
        if (len == 0) continue;
        BitString seg = vsets[ki].slice(static_cast<size_t>(segment_offset(total, spec.rk, pos)),
                                        static_cast<size_t>(len));
        payload.xor_in(seg);  // zero-pads the shorter operand
      }
      if (payload.empty()) continue;
      transcript.push(Message{sender, subset, std::move(payload), "coded"});
    }
    return true;
  });
  return transcript;
}

namespace {

std::vector<int> all_servers(int k) {
  std::vector<int> ids(static_cast<size_t>(k));
  for (int i = 0; i < k; i++) ids[static_cast<size_t>(i)] = i + 1;
  return ids;
}

ShuffleTranscript unicast_missing(const MapOutcome& outcome, const ReducerDistribution& reducers,
                                  const JobSpec& spec, const char* tag) {
  ShuffleTranscript transcript;
  std::vector<int> everyone = all_servers(spec.k);
  for (int server = 1; server <= spec.k; server++) {
    for (int64_t key : reducers.by_server[static_cast<size_t>(server)]) {
      for (int64_t n = 1; n <= spec.n; n++) {
        if (outcome.mapped_at(server, n)) continue;
        int sender = outcome.mappers_of_subfile[static_cast<size_t>(n)].front();
        BitString payload = outcome.values.value(key, n);
        transcript.push(Message{sender, everyone, std::move(payload), tag});
      }
    }
  }
  return transcript;
}

}  // namespace

ShuffleTranscript shuffle_uncoded(const MapOutcome& outcome, const ReducerDistribution& reducers,
                                  const JobSpec& spec) {
  return unicast_missing(outcome, reducers, spec, "uncoded");
}

ShuffleTranscript shuffle_conventional(const MapOutcome& outcome,
                                       const ReducerDistribution& reducers, const JobSpec& spec) {
  if (spec.pk != 1) throw Error(Errc::WrongAssignment, "conventional shuffle needs pk = 1");
  return unicast_missing(outcome, reducers, spec, "conv");
}

ShuffleTranscript run_shuffle(const MapOutcome& outcome, const ReducerDistribution& reducers,
                              const JobSpec& spec, Scheme scheme) {
  switch (scheme) {
    case Scheme::Coded: return shuffle_coded(outcome, reducers, spec);
    case Scheme::Uncoded: return shuffle_uncoded(outcome, reducers, spec);
    case Scheme::Conventional: return shuffle_conventional(outcome, reducers, spec);
  }
  throw Error(Errc::BadConfig, "unknown scheme");
}

const BitString& RecoveredValues::at(int64_t key, int64_t n) const {
  auto it = std::lower_bound(keys.begin(), keys.end(), key);
  if (it == keys.end() || *it != key) throw Error(Errc::ShapeError, "key not reduced here");
  size_t row = static_cast<size_t>(it - keys.begin());
  size_t total = table.size() / keys.size();
  return table[row * total + static_cast<size_t>(n - 1)];
}

namespace {

// Recover every remote value at `server` by cancelling known segments out of
// the received coded multicasts.
void decode_coded_at(RecoveredValues& rec, const ShuffleTranscript& transcript,
                     const MapOutcome& outcome, const ReducerDistribution& reducers,
                     const JobSpec& spec, int server, const GroupMap& groups) {
  std::unordered_map<uint64_t, const Message*> by_slot;  // (subset, sender) -> message
  auto slot_key = [](uint64_t mask, int sender) {
    return mask * 64 + static_cast<uint64_t>(sender - 1);
  };
  for (const Message& m : transcript.messages) by_slot[slot_key(mask_of(m.subset), m.sender)] = &m;

  uint64_t self_bit = uint64_t(1) << (server - 1);
  size_t total_n = static_cast<size_t>(spec.n);
  for (const auto& [excl_mask, subfiles] : groups) {
    if ((excl_mask & self_bit) != 0) continue;  // those subfiles are local
    uint64_t subset_mask = excl_mask | self_bit;
    std::vector<int> subset = ids_of(subset_mask);
    std::vector<int> senders = ids_of(excl_mask);

    auto ids = ids_in_group(reducers, server, subfiles);
    int64_t total_bits = static_cast<int64_t>(ids.size()) * spec.f;

    BitString assembled;
    for (size_t pos = 0; pos < senders.size(); pos++) {
      int sender = senders[pos];
      int64_t seg_len = segment_size(total_bits, spec.rk, static_cast<int>(pos));
      if (seg_len == 0) continue;
      auto slot = by_slot.find(slot_key(subset_mask, sender));
      if (slot == by_slot.end())
        throw DecodeError(server, ids.front().first, ids.front().second,
                          "missing coded message for a needed segment");
      BitString remainder = slot->second->payload;
      // cancel the other receivers' segments, rebuilt from locally mapped values
      for (int other : subset) {
        if (other == server || other == sender) continue;
        uint64_t other_excl = subset_mask & ~(uint64_t(1) << (other - 1));
        auto other_ids = ids_in_group(reducers, other, group_of(groups, other_excl));
        int64_t other_total = static_cast<int64_t>(other_ids.size()) * spec.f;
        int spos = position_without(subset, other, sender);
        int64_t other_len = segment_size(other_total, spec.rk, spos);
        if (other_len == 0) continue;
        int64_t other_off = segment_offset(other_total, spec.rk, spos);
        BitString known;
        int64_t cursor = 0;
        for (auto [okey, on] : other_ids) {
          int64_t lo = cursor, hi = cursor + spec.f;
          cursor = hi;
          if (hi <= other_off || lo >= other_off + other_len) continue;
          BitString v = outcome.values.value(okey, on);
          int64_t from = std::max<int64_t>(lo, other_off) - lo;
          int64_t to = std::min<int64_t>(hi, other_off + other_len) - lo;
          known.append(v.slice(static_cast<size_t>(from), static_cast<size_t>(to - from)));
        }
        remainder.xor_in(known);  // segments share the frame origin
      }
      assembled.append(remainder.slice(0, static_cast<size_t>(seg_len)));
    }

    if (static_cast<int64_t>(assembled.size_bits()) != total_bits)
      throw DecodeError(server, ids.front().first, ids.front().second,
                        "reassembled need set has wrong width");
    for (size_t vi = 0; vi < ids.size(); vi++) {
      auto [key, n] = ids[vi];
      auto it = std::lower_bound(rec.keys.begin(), rec.keys.end(), key);
      size_t row = static_cast<size_t>(it - rec.keys.begin());
      rec.table[row * total_n + static_cast<size_t>(n - 1)] =
          assembled.slice(vi * static_cast<size_t>(spec.f), static_cast<size_t>(spec.f));
    }
  }
}

// Unicast slots are totally ordered and deterministic; replay the order and
// keep the slots addressed to `server`.
void decode_unicast_at(RecoveredValues& rec, const ShuffleTranscript& transcript,
                       const MapOutcome& outcome, const ReducerDistribution& reducers,
                       const JobSpec& spec, int server) {
  size_t slot = 0;
  size_t total_n = static_cast<size_t>(spec.n);
  for (int dest = 1; dest <= spec.k; dest++) {
    for (int64_t key : reducers.by_server[static_cast<size_t>(dest)]) {
      for (int64_t n = 1; n <= spec.n; n++) {
        if (outcome.mapped_at(dest, n)) continue;
        if (slot >= transcript.messages.size())
          throw DecodeError(dest, key, n, "transcript ended before all needs were served");
        const Message& m = transcript.messages[slot++];
        if (dest != server) continue;
        if (m.payload.size_bits() != static_cast<size_t>(spec.f))
          throw DecodeError(dest, key, n, "unicast slot has wrong width");
        auto it = std::lower_bound(rec.keys.begin(), rec.keys.end(), key);
        size_t row = static_cast<size_t>(it - rec.keys.begin());
        rec.table[row * total_n + static_cast<size_t>(n - 1)] = m.payload;
      }
    }
  }
}

}  // namespace

std::vector<RecoveredValues> decode_all(const ShuffleTranscript& transcript,
                                        const MapOutcome& outcome,
                                        const ReducerDistribution& reducers, const JobSpec& spec) {
  bool coded = transcript.messages.empty() || transcript.messages.front().tag == "coded";
  GroupMap groups = group_by_mappers(outcome);

  std::vector<RecoveredValues> all(static_cast<size_t>(spec.k) + 1);
  for (int server = 1; server <= spec.k; server++) {
    RecoveredValues& rec = all[static_cast<size_t>(server)];
    rec.server = server;
    for (int64_t key : reducers.by_server[static_cast<size_t>(server)]) rec.keys.push_back(key);
    std::sort(rec.keys.begin(), rec.keys.end());
    rec.table.assign(rec.keys.size() * static_cast<size_t>(spec.n), BitString());

    size_t total_n = static_cast<size_t>(spec.n);
    for (size_t row = 0; row < rec.keys.size(); row++) {
      for (int64_t n = 1; n <= spec.n; n++) {
        if (outcome.mapped_at(server, n))
          rec.table[row * total_n + static_cast<size_t>(n - 1)] =
              outcome.values.value(rec.keys[row], n);
      }
    }

    if (coded)
      decode_coded_at(rec, transcript, outcome, reducers, spec, server, groups);
    else
      decode_unicast_at(rec, transcript, outcome, reducers, spec, server);

    for (size_t row = 0; row < rec.keys.size(); row++) {
      for (int64_t n = 1; n <= spec.n; n++) {
        if (rec.table[row * total_n + static_cast<size_t>(n - 1)].size_bits() !=
            static_cast<size_t>(spec.f))
          throw DecodeError(server, rec.keys[row], n, "value never recovered");
      }
    }
  }
  return all;
}

double measured_load(const ShuffleTranscript& transcript, const JobSpec& spec) {
  return static_cast<double>(transcript.total_bits) / static_cast<double>(spec.f);
}

std::string transcript_to_jsonl(const ShuffleTranscript& transcript) {
  std::ostringstream out;
  for (const Message& m : transcript.messages) {
    out << "{\"sender\":" << m.sender << ",\"subset\":[";
    for (size_t i = 0; i < m.subset.size(); i++) {
      if (i) out << ",";
      out << m.subset[i];
    }
    out << "],\"bits\":" << m.payload.size_bits() << ",\"tag\":\"" << m.tag << "\"}\n";
  }
  return out.str();
}

}  // namespace cmr

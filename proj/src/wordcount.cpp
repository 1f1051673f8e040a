#include "cmr/wordcount.hpp"

#include <ostream>
#include <sstream>

#include "cmr/assignment.hpp"
#include "cmr/combinatorics.hpp"
#include "cmr/map_exec.hpp"
#include "cmr/rng.hpp"
#include "cmr/shuffle.hpp"

namespace cmr {
namespace wordcount {

namespace {

// Per-chapter counts of A, B, C, D. Row q-1, column n-1.
constexpr int64_t kCounts[kWords][kChapters] = {
    {10, 12, 9, 13, 8, 12, 11, 14, 10, 15, 15, 10},
    {22, 24, 25, 25, 25, 25, 21, 21, 21, 21, 21, 21},
    {15, 15, 15, 15, 15, 15, 14, 18, 16, 17, 13, 16},
    {6, 6, 6, 6, 6, 6, 5, 5, 7, 4, 8, 6},
};

const char* kFiller[] = {"the", "quick", "brown", "fox", "jumps", "over",
                         "lazy", "dog",   "and",  "then", "naps"};

}  // namespace

const char* word_of_key(int64_t q) {
  static const char* words[] = {"", "A", "B", "C", "D"};
  return words[q];
}

std::vector<std::string> chapters() {
  std::vector<std::string> out(kChapters + 1);
  for (int n = 1; n <= kChapters; n++) {
    std::vector<std::string> tokens;
    for (int q = 1; q <= kWords; q++) {
      for (int64_t i = 0; i < kCounts[q - 1][n - 1]; i++) tokens.push_back(word_of_key(q));
    }
    size_t filler = tokens.size() / 2;
    SplitMix64 rng(derive_seed(0x636861707465ULL, static_cast<uint64_t>(n)));
    for (size_t i = 0; i < filler; i++)
      tokens.push_back(kFiller[rng.next_below(sizeof(kFiller) / sizeof(kFiller[0]))]);
    for (size_t i = tokens.size(); i > 1; i--)
      std::swap(tokens[i - 1], tokens[rng.next_below(i)]);
    std::ostringstream text;
    for (size_t i = 0; i < tokens.size(); i++) {
      if (i) text << (i % 12 == 0 ? "\n" : " ");
      text << tokens[i];
    }
    out[static_cast<size_t>(n)] = text.str();
  }
  return out;
}

int64_t count_word(const std::string& text, int64_t q) {
  std::istringstream in(text);
  std::string token;
  int64_t count = 0;
  while (in >> token) {
    if (token == word_of_key(q)) count++;
  }
  return count;
}

namespace {

std::string render_pair(const CodedPair& p) {
  std::ostringstream out;
  out << "(" << p.label << "," << p.sum << ")[";
  for (size_t i = 0; i < p.chapters.size(); i++) {
    if (i) out << ",";
    out << p.chapters[i];
  }
  out << "]";
  return out.str();
}

}  // namespace

Report run() {
  Report report;
  JobSpec raw;
  raw.n = kChapters;
  raw.q = kWords;
  raw.k = 4;
  raw.pk = 2;
  raw.rk = 2;
  raw.f = 32;
  raw.mu = 1.0;
  raw.seed = 0;
  report.spec = validate_spec(raw);
  const JobSpec& spec = report.spec;

  // real Map phase: count words per chapter, encode as F-bit integers
  auto texts = chapters();
  ValueTable values(spec.q, spec.n, spec.f);
  for (int64_t q = 1; q <= spec.q; q++) {
    for (int64_t n = 1; n <= spec.n; n++)
      values.set(q, n, BitString::from_uint(
                           static_cast<uint64_t>(count_word(texts[static_cast<size_t>(n)], q)),
                           static_cast<size_t>(spec.f)));
  }

  report.assignment = assign_batch(spec);
  MapOutcome outcome = execute_maps(report.assignment, spec, spec.seed, std::move(values));
  ReducerDistribution reducers = canonical_reducers(spec);
  ShuffleTranscript transcript = shuffle_coded(outcome, reducers, spec);
  report.load = measured_load(transcript, spec);

  // pair view of each coded message (every segment is one whole value here)
  for (const Message& m : transcript.messages) {
    CodedPair pair;
    pair.sender = m.sender;
    pair.subset = m.subset;
    uint64_t subset_mask = mask_of(m.subset);
    for (int receiver : m.subset) {
      if (receiver == m.sender) continue;
      uint64_t excl = subset_mask & ~(uint64_t(1) << (receiver - 1));
      auto ids = need_ids(outcome, reducers, receiver, excl);
      int pos = 0;
      for (int v : m.subset) {
        if (v == receiver) continue;
        if (v == m.sender) break;
        pos++;
      }
      auto [key, chapter] = ids[static_cast<size_t>(pos)];
      int64_t count = static_cast<int64_t>(outcome.values.value(key, chapter).to_uint());
      pair.label += word_of_key(key);
      pair.chapters.push_back(chapter);
      pair.values.push_back(count);
      pair.sum += count;
    }
    report.pairs.push_back(std::move(pair));
  }

  // decode and reduce
  auto recovered = decode_all(transcript, outcome, reducers, spec);
  for (int server = 1; server <= spec.k; server++) {
    int64_t total = 0;
    for (int64_t n = 1; n <= spec.n; n++)
      total += static_cast<int64_t>(recovered[static_cast<size_t>(server)]
                                        .at(server, n)
                                        .to_uint());
    report.totals[static_cast<size_t>(server)] = total;
  }
  for (int64_t q = 1; q <= spec.q; q++) {
    int64_t total = 0;
    for (int64_t n = 1; n <= spec.n; n++) total += count_word(texts[static_cast<size_t>(n)], q);
    report.direct[static_cast<size_t>(q)] = total;
  }

  // decode step view: which known value each receiver cancels from each pair
  for (const CodedPair& pair : report.pairs) {
    for (size_t i = 0; i < pair.values.size(); i++) {
      // receiver of constituent i recovers it by cancelling the other one
      size_t other = 1 - i;
      DecodeStep step;
      std::vector<int> receivers;
      for (int v : pair.subset) {
        if (v != pair.sender) receivers.push_back(v);
      }
      step.server = receivers[i];
      step.pair = render_pair(pair);
      std::ostringstream known;
      known << pair.label[other] << "[" << pair.chapters[other] << "]=" << pair.values[other];
      step.known = known.str();
      std::ostringstream rec;
      rec << pair.label[i] << "[" << pair.chapters[i] << "]=" << pair.values[i];
      step.recovered = rec.str();
      report.steps.push_back(std::move(step));
    }
  }

  report.ok = true;
  for (int q = 1; q <= kWords; q++) {
    if (report.totals[static_cast<size_t>(q)] != report.direct[static_cast<size_t>(q)])
      report.ok = false;
  }
  return report;
}

void print(const Report& report, std::ostream& out) {
  out << "word-counting demo: " << kChapters << " chapters, words A B C D, K=4 servers, "
      << "pK=rK=2 batch assignment, coded shuffle\n\n";
  out << "assignment (M_k):\n";
  for (int srv = 1; srv <= report.spec.k; srv++) {
    out << "  server " << srv << ": {";
    const auto& subs = report.assignment.by_server[static_cast<size_t>(srv)];
    for (size_t i = 0; i < subs.size(); i++) {
      if (i) out << ",";
      out << subs[i];
    }
    out << "}\n";
  }
  out << "\ncoded pairs on the shared link (decoded integer view):\n";
  for (const auto& pair : report.pairs) {
    out << "  server " << pair.sender << " sends " << render_pair(pair) << "  <-";
    for (size_t i = 0; i < pair.values.size(); i++)
      out << " " << pair.label[i] << "[" << pair.chapters[i] << "]=" << pair.values[i];
    out << "\n";
  }
  out << "\ntotal communication load: " << report.load << " slots\n";
  out << "\ndecode steps:\n";
  for (const auto& step : report.steps) {
    out << "  server " << step.server << ": " << step.pair << " - " << step.known << " -> "
        << step.recovered << "\n";
  }
  out << "\nfinal totals (pipeline vs direct count):\n";
  for (int q = 1; q <= kWords; q++) {
    out << "  " << word_of_key(q) << ": " << report.totals[static_cast<size_t>(q)] << " vs "
        << report.direct[static_cast<size_t>(q)]
        << (report.totals[static_cast<size_t>(q)] == report.direct[static_cast<size_t>(q)]
                ? "  ok"
                : "  MISMATCH")
        << "\n";
  }
  out << (report.ok ? "demo ok\n" : "demo FAILED\n");
}

}  // namespace wordcount
}  // namespace cmr

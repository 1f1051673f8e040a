#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "cmr/model.hpp"

namespace cmr {

// Bundled word-counting job: 4 tracked words A,B,C,D over 12 chapters,
// counted on 4 servers with pK = rK = 2 batch assignment and the coded
// shuffle. The per-chapter counts are fixed so the whole run, including
// every coded pair on the wire, is reproducible.
namespace wordcount {

constexpr int kChapters = 12;
constexpr int kWords = 4;

// tracked word of key q (1-based): "A".."D"
const char* word_of_key(int64_t q);

// deterministic chapter texts; index 1..12, [0] empty
std::vector<std::string> chapters();

// occurrences of the tracked word `q` in `text` (whole-token match)
int64_t count_word(const std::string& text, int64_t q);

struct CodedPair {
  int sender = 0;
  std::vector<int> subset;
  std::string label;              // receiver word letters, ascending receivers
  int64_t sum = 0;                // sum of the constituent counts
  std::vector<int64_t> chapters;  // chapter of each constituent
  std::vector<int64_t> values;    // the constituent counts
};

struct DecodeStep {
  int server = 0;
  std::string pair;      // rendered pair, e.g. "(BC,40)[3,1]"
  std::string known;     // e.g. "C[1]=15"
  std::string recovered; // e.g. "B[3]=25"
};

struct Report {
  JobSpec spec;
  Assignment assignment;
  double load = 0;
  std::vector<CodedPair> pairs;
  std::vector<DecodeStep> steps;
  std::array<int64_t, kWords + 1> totals{};  // reduced through the pipeline
  std::array<int64_t, kWords + 1> direct{};  // counted over the whole corpus
  bool ok = false;
};

Report run();
void print(const Report& report, std::ostream& out);

}  // namespace wordcount
}  // namespace cmr

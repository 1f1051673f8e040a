#pragma once

#include "cmr/model.hpp"

namespace cmr {

enum class Strategy { Batch, Naive, Conventional };

const char* strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& name);  // throws BadConfig

// Batch assignment: subfiles are split into C(K, pK) batches of g, taken in
// index order; batch i goes to every server of the i-th pK-subset of {1..K}
// in lexicographic subset order. |M_k| = g*C(K-1, pK-1) for every k.
Assignment assign_batch(const JobSpec& spec);

// Naive block assignment: servers in K/pK groups of pK, subfiles in K/pK
// contiguous blocks of pN; group j maps block j. Requires pK | K.
Assignment assign_naive(const JobSpec& spec);

// One server per subfile: M_k is the k-th block of N/K. Requires pK = rK = 1
// and K | N.
Assignment assign_conventional(const JobSpec& spec);

Assignment make_assignment(const JobSpec& spec, Strategy strategy);

}  // namespace cmr

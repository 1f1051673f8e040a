#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace cmr {

// Exact binomial coefficient; throws std::overflow_error if it leaves int64 range.
int64_t binomial(int64_t n, int64_t k);

// All k-subsets of {1,...,n} in lexicographic order, each sorted ascending.
// This ordering together with index-ordered batches reproduces the canonical
// batch assignment layout (every printed worked example in the docs).
std::vector<std::vector<int>> subsets_lex(int n, int k);

// Visitor form, same order; stops early if fn returns false.
void for_each_subset_lex(int n, int k, const std::function<bool(const std::vector<int>&)>& fn);

// Bitmask helpers for server sets (1-based ids, bit id-1).
uint64_t mask_of(const std::vector<int>& ids);
std::vector<int> ids_of(uint64_t mask);

}  // namespace cmr

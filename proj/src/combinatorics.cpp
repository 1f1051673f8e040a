#include "cmr/combinatorics.hpp"

#include <stdexcept>

namespace cmr {

int64_t binomial(int64_t n, int64_t k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  // multiply/divide in increasing order; partial products stay integral
  unsigned long long acc = 1;
  for (int64_t i = 1; i <= k; i++) {
    unsigned long long num = static_cast<unsigned long long>(n - k + i);
    unsigned long long tmp;
    if (__builtin_mul_overflow(acc, num, &tmp)) throw std::overflow_error("binomial overflow");
    acc = tmp / static_cast<unsigned long long>(i);
  }
  if (acc > 0x7fffffffffffffffULL) throw std::overflow_error("binomial overflow");
  return static_cast<int64_t>(acc);
}

void for_each_subset_lex(int n, int k, const std::function<bool(const std::vector<int>&)>& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> cur(k);
  for (int i = 0; i < k; i++) cur[i] = i + 1;
  for (;;) {
    if (!fn(cur)) return;
    // advance: find rightmost slot that can still grow
    int i = k - 1;
    while (i >= 0 && cur[i] == n - (k - 1 - i)) i--;
    if (i < 0) return;
    cur[i]++;
    for (int j = i + 1; j < k; j++) cur[j] = cur[j - 1] + 1;
  }
}

std::vector<std::vector<int>> subsets_lex(int n, int k) {
  std::vector<std::vector<int>> out;
  for_each_subset_lex(n, k, [&](const std::vector<int>& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

uint64_t mask_of(const std::vector<int>& ids) {
  uint64_t m = 0;
  for (int id : ids) m |= (uint64_t(1) << (id - 1));
  return m;
}

std::vector<int> ids_of(uint64_t mask) {
  std::vector<int> ids;
  for (int i = 0; mask != 0; i++, mask >>= 1) {
    if (mask & 1u) ids.push_back(i + 1);
  }
  return ids;
}

}  // namespace cmr

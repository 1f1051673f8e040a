#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cmr/bitstring.hpp"
#include "cmr/combinatorics.hpp"
#include "cmr/rng.hpp"

using namespace cmr;

TEST_CASE("from_uint round-trips through to_uint") {
  CHECK(BitString::from_uint(0, 32).to_uint() == 0);
  CHECK(BitString::from_uint(40, 32).to_uint() == 40);
  CHECK(BitString::from_uint(0xdeadbeef, 32).to_uint() == 0xdeadbeef);
  CHECK(BitString::from_uint(5, 3).to_uint() == 5);
  CHECK(BitString::from_uint(0xff, 3).to_uint() == 7);  // truncated to width
}

TEST_CASE("keyed_random is deterministic and width-exact") {
  for (size_t bits : {1u, 7u, 8u, 13u, 32u, 64u, 65u, 200u}) {
    BitString a = BitString::keyed_random(42, bits);
    BitString b = BitString::keyed_random(42, bits);
    CHECK(a == b);
    CHECK(a.size_bits() == bits);
    CHECK(a.bytes().size() == (bits + 7) / 8);
  }
  CHECK_FALSE(BitString::keyed_random(1, 64) == BitString::keyed_random(2, 64));
}

TEST_CASE("xor keeps the F-bit width and padding is zero-extension") {
  BitString a = BitString::keyed_random(7, 32);
  BitString b = BitString::keyed_random(8, 32);
  CHECK(a.xor_padded(b).size_bits() == 32);
  CHECK(a.xor_padded(a) == BitString::zeros(32));

  BitString small = BitString::from_uint(0b101, 3);
  BitString big = BitString::from_uint(0, 9);
  BitString padded = big.xor_padded(small);
  CHECK(padded.size_bits() == 9);
  CHECK(padded.to_uint() == 0b101);
}

TEST_CASE("slice/append round trip over random splits") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 200; trial++) {
    size_t bits = 1 + rng.next_below(150);
    BitString whole = BitString::keyed_random(rng.next(), bits);
    size_t cut = rng.next_below(bits + 1);
    BitString rebuilt = whole.slice(0, cut);
    rebuilt.append(whole.slice(cut, bits - cut));
    CHECK(rebuilt == whole);
  }
}

TEST_CASE("xor cancellation recovers a segment from a padded sum") {
  SplitMix64 rng(123);
  for (int trial = 0; trial < 100; trial++) {
    size_t la = 1 + rng.next_below(40);
    size_t lb = 1 + rng.next_below(40);
    BitString a = BitString::keyed_random(rng.next(), la);
    BitString b = BitString::keyed_random(rng.next(), lb);
    BitString sum = a.xor_padded(b);
    BitString back = sum.xor_padded(b).slice(0, la);
    CHECK(back == a);
  }
}

TEST_CASE("binomial matches Pascal for small n and guards overflow") {
  for (int n = 0; n <= 20; n++) {
    int64_t row = 1;
    for (int k = 0; k <= n; k++) {
      CHECK(binomial(n, k) == row);
      row = row * (n - k) / (k + 1);
    }
  }
  CHECK(binomial(50, 25) == 126410606437752LL);
  CHECK(binomial(4, 5) == 0);
  CHECK_THROWS_AS(binomial(80, 40), std::overflow_error);
}

TEST_CASE("subset enumeration is lexicographic and complete") {
  auto subsets = subsets_lex(4, 2);
  std::vector<std::vector<int>> want = {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
  CHECK(subsets == want);
  CHECK(subsets_lex(8, 3).size() == static_cast<size_t>(binomial(8, 3)));
  CHECK(subsets_lex(3, 3) == std::vector<std::vector<int>>{{1, 2, 3}});
}

TEST_CASE("mask round trip") {
  std::vector<int> ids = {1, 3, 7};
  CHECK(ids_of(mask_of(ids)) == ids);
  CHECK(mask_of({}) == 0);
}

TEST_CASE("draw_subset is uniform enough at 3-choose-2") {
  // each of the 3 pairs should land ~1/3 of the time
  std::vector<int> pool = {4, 7, 9};
  int counts[3] = {0, 0, 0};
  int trials = 30000;
  SplitMix64 rng(2024);
  for (int t = 0; t < trials; t++) {
    auto pick = draw_subset(rng, pool, 2);
    if (pick == std::vector<int>{4, 7}) counts[0]++;
    if (pick == std::vector<int>{4, 9}) counts[1]++;
    if (pick == std::vector<int>{7, 9}) counts[2]++;
  }
  CHECK(counts[0] + counts[1] + counts[2] == trials);
  for (int c : counts) CHECK(std::abs(c - trials / 3) < 400);  // ~4.6 sigma
}

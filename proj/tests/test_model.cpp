#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cmr/assignment.hpp"
#include "cmr/model.hpp"
#include "cmr/rng.hpp"
#include "cmr/runner.hpp"

using namespace cmr;

namespace {
JobSpec raw_spec(int64_t n, int64_t q, int k, int pk, int rk, int f = 32) {
  JobSpec s;
  s.n = n;
  s.q = q;
  s.k = k;
  s.pk = pk;
  s.rk = rk;
  s.f = f;
  s.mu = 1.0;
  s.seed = 5;
  return s;
}
}  // namespace

TEST_CASE("validate_spec computes g and keeps exact n") {
  JobSpec s = validate_spec(raw_spec(12, 4, 4, 2, 2));
  CHECK(s.g == 2);
  CHECK(s.n == 12);
  CHECK(s.n_raw == 12);
}

TEST_CASE("validate_spec pads n up with empty subfiles") {
  JobSpec s = validate_spec(raw_spec(10, 4, 4, 2, 2));
  CHECK(s.g == 2);
  CHECK(s.n == 12);
  CHECK(s.n_raw == 10);
}

TEST_CASE("validate_spec rejects r > p") {
  CHECK_THROWS_AS(validate_spec(raw_spec(12, 4, 4, 2, 3)), Error);
  try {
    validate_spec(raw_spec(12, 4, 4, 2, 3));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::RExceedsP);
  }
}

TEST_CASE("validate_spec rejects q not divisible by k") {
  try {
    validate_spec(raw_spec(12, 5, 4, 2, 2));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::QNotDivisibleByK);
  }
}

TEST_CASE("fraction front door flags non-integer pK and rK") {
  JobSpec ok = validate_spec_fractions(12, 4, 4, 0.5, 0.5, 32, 1.0, 0);
  CHECK(ok.pk == 2);
  CHECK(ok.rk == 2);
  try {
    validate_spec_fractions(12, 4, 4, 0.3, 0.25, 32, 1.0, 0);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonIntegerPK);
  }
  try {
    validate_spec_fractions(12, 4, 4, 0.5, 0.3, 32, 1.0, 0);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonIntegerRK);
  }
}

TEST_CASE("canonical reducers are consecutive blocks") {
  JobSpec s = validate_spec(raw_spec(12, 4, 4, 2, 2));
  ReducerDistribution d = canonical_reducers(s);
  CHECK(d.by_server[1] == std::vector<int64_t>{1});
  CHECK(d.by_server[2] == std::vector<int64_t>{2});
  CHECK(d.by_server[3] == std::vector<int64_t>{3});
  CHECK(d.by_server[4] == std::vector<int64_t>{4});

  JobSpec s2 = validate_spec(raw_spec(2, 4, 2, 1, 1));
  ReducerDistribution d2 = canonical_reducers(s2);
  CHECK(d2.by_server[1] == std::vector<int64_t>{1, 2});
  CHECK(d2.by_server[2] == std::vector<int64_t>{3, 4});

  JobSpec s3 = validate_spec(raw_spec(10, 10, 10, 1, 1));
  ReducerDistribution d3 = canonical_reducers(s3);
  for (int srv = 1; srv <= 10; srv++)
    CHECK(d3.by_server[static_cast<size_t>(srv)] == std::vector<int64_t>{srv});
}

TEST_CASE("random reducer distributions satisfy the three validity conditions") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 100; trial++) {
    int k = 1 + static_cast<int>(rng.next_below(8));
    int64_t q = k * (1 + static_cast<int64_t>(rng.next_below(5)));
    JobSpec s = validate_spec(raw_spec(6, q, k, 1, 1));
    ReducerDistribution d = random_reducers(s, rng.next());
    d.check_valid(q, k);  // throws on violation
  }
  CHECK(true);
}

TEST_CASE("assignment views round trip exactly") {
  SplitMix64 rng(31337);
  for (int trial = 0; trial < 60; trial++) {
    int k = 2 + static_cast<int>(rng.next_below(6));
    int pk = 1 + static_cast<int>(rng.next_below(static_cast<uint64_t>(k)));
    JobSpec s = validate_spec(raw_spec(1 + static_cast<int64_t>(rng.next_below(30)),
                                       k, k, pk, pk));
    Assignment a = assign_batch(s);
    Assignment back = Assignment::from_by_subfile(s.k, s.n, a.by_subfile);
    CHECK(back.by_server == a.by_server);
    Assignment fwd = Assignment::from_by_server(s.k, s.n, a.by_server);
    CHECK(fwd.by_subfile == a.by_subfile);
  }
}

TEST_CASE("value table stores exact widths and pads with zeros") {
  ValueTable t(3, 5, 13);
  t.fill_keyed(99, 4);  // subfile 5 is padding
  for (int64_t q = 1; q <= 3; q++) {
    for (int64_t n = 1; n <= 5; n++) {
      CHECK(t.value(q, n).size_bits() == 13);
    }
    CHECK(t.value(q, 5) == BitString::zeros(13));
  }
  // deterministic per (seed, q, n)
  ValueTable t2(3, 5, 13);
  t2.fill_keyed(99, 4);
  CHECK(t.value(2, 3) == t2.value(2, 3));
  ValueTable t3(3, 5, 13);
  t3.fill_keyed(100, 4);
  CHECK_FALSE(t.value(2, 3) == t3.value(2, 3));
}

TEST_CASE("spec JSON round trip uses integer pk/rk") {
  JobSpec s = validate_spec(raw_spec(10, 4, 4, 2, 2));
  std::string text = spec_to_json(s);
  CHECK(text.find("\"pk\": 2") != std::string::npos);
  JobSpec back = spec_from_json(text);
  CHECK(back.n_raw == 10);
  CHECK(back.n == 12);
  CHECK(back.q == s.q);
  CHECK(back.pk == s.pk);
  CHECK(back.rk == s.rk);
  CHECK(back.seed == s.seed);
}

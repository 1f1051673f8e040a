#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cmr/assignment.hpp"
#include "cmr/combinatorics.hpp"

using namespace cmr;

namespace {
JobSpec spec_of(int64_t n, int64_t q, int k, int pk, int rk) {
  JobSpec s;
  s.n = n;
  s.q = q;
  s.k = k;
  s.pk = pk;
  s.rk = rk;
  s.f = 32;
  s.mu = 1.0;
  return validate_spec(s);
}
}  // namespace

TEST_CASE("batch assignment reproduces the 12-chapter worked layout") {
  JobSpec s = spec_of(12, 4, 4, 2, 2);
  CHECK(s.g == 2);
  Assignment a = assign_batch(s);
  CHECK(a.by_server[1] == std::vector<int>{1, 2, 3, 4, 5, 6});
  CHECK(a.by_server[2] == std::vector<int>{1, 2, 7, 8, 9, 10});
  CHECK(a.by_server[3] == std::vector<int>{3, 4, 7, 8, 11, 12});
  CHECK(a.by_server[4] == std::vector<int>{5, 6, 9, 10, 11, 12});
}

TEST_CASE("batch with pk = k gives every subfile to every server") {
  JobSpec s = spec_of(3, 3, 3, 3, 3);
  Assignment a = assign_batch(s);
  for (int srv = 1; srv <= 3; srv++)
    CHECK(a.by_server[static_cast<size_t>(srv)] == std::vector<int>{1, 2, 3});
}

TEST_CASE("batch per-server share is g * C(K-1, pK-1)") {
  JobSpec s = spec_of(10, 5, 5, 2, 2);
  CHECK(s.g == 1);
  Assignment a = assign_batch(s);
  for (int srv = 1; srv <= 5; srv++)
    CHECK(a.by_server[static_cast<size_t>(srv)].size() == 4);  // C(4,1)
}

TEST_CASE("every pK-subset shares exactly g subfiles under batch") {
  for (int k = 2; k <= 8; k++) {
    for (int pk = 1; pk <= k; pk++) {
      for (int64_t g = 1; g <= 2; g++) {
        JobSpec s = spec_of(g * binomial(k, pk), k, k, pk, pk);
        Assignment a = assign_batch(s);
        for (const auto& team : subsets_lex(k, pk)) {
          // subfiles assigned to all of `team` (A_n has size pk, so equality)
          int64_t shared = 0;
          for (int64_t n = 1; n <= s.n; n++) {
            if (a.by_subfile[static_cast<size_t>(n)] == team) shared++;
          }
          CHECK(shared == g);
        }
      }
    }
  }
}

TEST_CASE("total assignment volume is pK * N for every strategy") {
  auto edges = [](const Assignment& a) {
    int64_t sum = 0;
    for (const auto& row : a.by_server) sum += static_cast<int64_t>(row.size());
    return sum;
  };
  JobSpec batch = spec_of(12, 4, 4, 2, 2);
  CHECK(edges(assign_batch(batch)) == 2 * 12);
  JobSpec naive = spec_of(12, 4, 4, 2, 2);
  CHECK(edges(assign_naive(naive)) == 2 * 12);
  JobSpec conv = spec_of(12, 4, 4, 1, 1);
  CHECK(edges(assign_conventional(conv)) == 12);
}

TEST_CASE("assignments are deterministic") {
  JobSpec s = spec_of(30, 6, 6, 3, 2);
  CHECK(assign_batch(s).by_server == assign_batch(s).by_server);
}

TEST_CASE("naive blocks match the two-group example") {
  JobSpec s = spec_of(12, 4, 4, 2, 2);
  Assignment a = assign_naive(s);
  CHECK(a.by_server[1] == std::vector<int>{1, 2, 3, 4, 5, 6});
  CHECK(a.by_server[2] == std::vector<int>{1, 2, 3, 4, 5, 6});
  CHECK(a.by_server[3] == std::vector<int>{7, 8, 9, 10, 11, 12});
  CHECK(a.by_server[4] == std::vector<int>{7, 8, 9, 10, 11, 12});
}

TEST_CASE("naive with pk = 1 degenerates to conventional") {
  JobSpec s = spec_of(12, 4, 4, 1, 1);
  Assignment naive = assign_naive(s);
  Assignment conv = assign_conventional(s);
  CHECK(naive.by_server == conv.by_server);
  for (int srv = 1; srv <= 4; srv++)
    CHECK(naive.by_server[static_cast<size_t>(srv)].size() == 3);
}

TEST_CASE("naive rejects pk that does not divide k") {
  JobSpec s = spec_of(15, 6, 6, 4, 2);
  try {
    assign_naive(s);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NaiveShapeError);
  }
}

TEST_CASE("conventional needs pk = rk = 1") {
  JobSpec s = spec_of(12, 4, 4, 2, 2);
  try {
    assign_conventional(s);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ShapeError);
  }
  JobSpec one = spec_of(4, 4, 4, 1, 1);
  Assignment a = assign_conventional(one);
  for (int srv = 1; srv <= 4; srv++)
    CHECK(a.by_server[static_cast<size_t>(srv)] == std::vector<int>{srv});
}

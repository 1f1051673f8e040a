#include "cmr/assignment.hpp"

#include <sstream>

#include "cmr/combinatorics.hpp"

namespace cmr {

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Batch: return "batch";
    case Strategy::Naive: return "naive";
    case Strategy::Conventional: return "conventional";
  }
  return "?";
}

Strategy strategy_from_name(const std::string& name) {
  if (name == "batch") return Strategy::Batch;
  if (name == "naive") return Strategy::Naive;
  if (name == "conventional") return Strategy::Conventional;
  throw Error(Errc::BadConfig, "unknown strategy: " + name);
}

Assignment assign_batch(const JobSpec& spec) {
  std::vector<std::vector<int>> by_subfile(static_cast<size_t>(spec.n) + 1);
  int64_t next = 1;
  for_each_subset_lex(spec.k, spec.pk, [&](const std::vector<int>& servers) {
    for (int64_t j = 0; j < spec.g; j++) by_subfile[static_cast<size_t>(next++)] = servers;
    return true;
  });
  return Assignment::from_by_subfile(spec.k, spec.n, std::move(by_subfile));
}

Assignment assign_naive(const JobSpec& spec) {
  if (spec.k % spec.pk != 0) {
    std::ostringstream msg;
    msg << "naive assignment needs pk | k; got pk=" << spec.pk << ", k=" << spec.k;
    throw Error(Errc::NaiveShapeError, msg.str());
  }
  int groups = spec.k / spec.pk;
  if (spec.n % groups != 0)
    throw Error(Errc::NaiveShapeError, "naive assignment needs (k/pk) | n");
  int64_t block = spec.n / groups;  // = pN
  std::vector<std::vector<int>> by_subfile(static_cast<size_t>(spec.n) + 1);
  for (int grp = 0; grp < groups; grp++) {
    std::vector<int> servers;
    for (int j = 0; j < spec.pk; j++) servers.push_back(grp * spec.pk + j + 1);
    for (int64_t sub = grp * block + 1; sub <= (grp + 1) * block; sub++)
      by_subfile[static_cast<size_t>(sub)] = servers;
  }
  return Assignment::from_by_subfile(spec.k, spec.n, std::move(by_subfile));
}

Assignment assign_conventional(const JobSpec& spec) {
  if (spec.pk != 1 || spec.rk != 1)
    throw Error(Errc::ShapeError, "conventional assignment needs pk = rk = 1");
  if (spec.n % spec.k != 0)
    throw Error(Errc::ShapeError, "conventional assignment needs k | n");
  int64_t block = spec.n / spec.k;
  std::vector<std::vector<int>> by_subfile(static_cast<size_t>(spec.n) + 1);
  for (int srv = 1; srv <= spec.k; srv++) {
    for (int64_t sub = (srv - 1) * block + 1; sub <= srv * block; sub++)
      by_subfile[static_cast<size_t>(sub)] = {srv};
  }
  return Assignment::from_by_subfile(spec.k, spec.n, std::move(by_subfile));
}

Assignment make_assignment(const JobSpec& spec, Strategy strategy) {
  switch (strategy) {
    case Strategy::Batch: return assign_batch(spec);
    case Strategy::Naive: return assign_naive(spec);
    case Strategy::Conventional: return assign_conventional(spec);
  }
  throw Error(Errc::BadConfig, "unknown strategy");
}

}  // namespace cmr

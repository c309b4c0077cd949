#include <catch2/catch_amalgamated.hpp>

#include "pops/fairdist.hpp"
#include "pops/permgen.hpp"
#include "pops/router.hpp"

using namespace pops;

namespace {

// Exhaustive oracle: enumerates every assignment f and reports whether any
// satisfies properties (1)-(3), and whether `candidate` is among the valid
// ones. Only for tiny instances.
bool oracle_is_fair(const ListSystem& ls, const FairDistribution& fd) {
  return verify_fair(ls, fd).ok;
}

bool oracle_fair_exists(const ListSystem& ls) {
  const int cells = ls.n1 * ls.delta1;
  FairDistribution fd;
  fd.delta2 = ls.n1 * ls.delta1 / ls.n2;
  fd.f.assign(ls.n1, std::vector<int>(ls.delta1, 0));
  long long total = 1;
  for (int c = 0; c < cells; ++c) total *= ls.n2;
  for (long long code = 0; code < total; ++code) {
    long long x = code;
    for (int s = 0; s < ls.n1; ++s)
      for (int i = 0; i < ls.delta1; ++i) {
        fd.f[s][i] = static_cast<int>(x % ls.n2);
        x /= ls.n2;
      }
    if (oracle_is_fair(ls, fd)) return true;
  }
  return false;
}

ListSystem reversal_2x2_system() {
  // POPS(2,2) vector reversal: group 0's packets go to group 1 and back.
  ListSystem ls;
  ls.n1 = ls.n2 = 2;
  ls.delta1 = 2;
  ls.lists = {{1, 1}, {0, 0}};
  return ls;
}

}  // namespace

TEST_CASE("is_proper") {
  CHECK(is_proper(reversal_2x2_system()).proper);

  ListSystem lopsided = reversal_2x2_system();
  lopsided.lists = {{0, 0}, {0, 0}};
  auto rep = is_proper(lopsided);
  CHECK_FALSE(rep.proper);
  CHECK_THAT(rep.reason, Catch::Matchers::ContainsSubstring("element 0"));

  ListSystem indivisible;
  indivisible.n1 = 3;
  indivisible.n2 = 2;
  indivisible.delta1 = 1;
  indivisible.lists = {{1}, {2}, {0}};
  auto rep2 = is_proper(indivisible);
  CHECK_FALSE(rep2.proper);
  CHECK_THAT(rep2.reason, Catch::Matchers::ContainsSubstring("divide"));
}

TEST_CASE("well-formedness guards") {
  ListSystem bad;
  bad.n1 = 2;
  bad.n2 = 1;
  bad.delta1 = 2;  // delta1 > n2
  bad.lists = {{0, 0}, {1, 1}};
  CHECK_THROWS_AS(is_proper(bad), Error);

  ListSystem ragged = reversal_2x2_system();
  ragged.lists[1].pop_back();
  CHECK_THROWS_AS(is_proper(ragged), Error);
}

TEST_CASE("find_fair_distribution on the reversal system") {
  const auto ls = reversal_2x2_system();
  const auto fd = find_fair_distribution(ls);
  CHECK(fd.delta2 == 2);
  CHECK(verify_fair(ls, fd).ok);

  // frozen oracle result: the assignment f(0,.)=(0,1), f(1,.)=(0,1) is fair
  FairDistribution known{{{0, 1}, {0, 1}}, 2};
  CHECK(oracle_is_fair(ls, known));
  CHECK(oracle_fair_exists(ls));
}

TEST_CASE("find_fair_distribution with full lists is a bijection per source") {
  // delta1 = n2 = n1: every list a permutation of S, no padding needed
  ListSystem ls;
  ls.n1 = ls.n2 = 3;
  ls.delta1 = 3;
  ls.lists = {{0, 1, 2}, {2, 0, 1}, {1, 2, 0}};
  REQUIRE(is_proper(ls).proper);
  const auto fd = find_fair_distribution(ls);
  CHECK(verify_fair(ls, fd).ok);
  for (const auto& row : fd.f) {
    std::vector<int> sorted = row;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>{0, 1, 2});
  }
}

TEST_CASE("find_fair_distribution on a padded doubled-pair system") {
  ListSystem ls;
  ls.n1 = ls.n2 = 4;
  ls.delta1 = 2;
  ls.lists = {{1, 1}, {0, 0}, {3, 3}, {2, 2}};
  REQUIRE(is_proper(ls).proper);
  const auto fd = find_fair_distribution(ls);
  CHECK(fd.delta2 == 2);
  CHECK(verify_fair(ls, fd).ok);
  CHECK(oracle_fair_exists(ls));
}

TEST_CASE("improper input is rejected") {
  ListSystem ls = reversal_2x2_system();
  ls.lists = {{0, 0}, {0, 0}};
  CHECK_THROWS_AS(find_fair_distribution(ls), Error);
}

TEST_CASE("verify_fair reports the violated property") {
  const auto ls = reversal_2x2_system();
  FairDistribution repeated{{{0, 0}, {0, 1}}, 2};
  auto rep = verify_fair(ls, repeated);
  CHECK_FALSE(rep.ok);
  CHECK_THAT(rep.violation, Catch::Matchers::ContainsSubstring("property (1)"));
  CHECK_THAT(rep.violation, Catch::Matchers::ContainsSubstring("s=0"));

  FairDistribution unbalanced{{{0, 1}, {1, 0}}, 2};
  ListSystem clash = ls;
  clash.lists = {{1, 1}, {1, 0}};  // improper: 1 appears three times
  auto rep2 = verify_fair(clash, unbalanced);
  CHECK_FALSE(rep2.ok);
  CHECK_THAT(rep2.violation, Catch::Matchers::ContainsSubstring("improper"));

  // property (3): positions (0,1) and (1,0) share list value 0 and target 1
  ListSystem two = ls;
  two.lists = {{1, 0}, {0, 1}};
  FairDistribution clash3{{{0, 1}, {1, 0}}, 2};
  auto rep3 = verify_fair(two, clash3);
  CHECK_FALSE(rep3.ok);
  CHECK_THAT(rep3.violation, Catch::Matchers::ContainsSubstring("property (3)"));
}

TEST_CASE("random proper systems from permutations verify fair") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int d = 2 + static_cast<int>(seed % 5);
    const int g = 2 + static_cast<int>((seed / 5) % 5);
    NetworkConfig cfg(d, g);
    const auto pi = random_permutation(cfg.n(), seed);
    const auto ls = build_list_system(cfg, pi);
    REQUIRE(is_proper(ls).proper);
    const auto fd = find_fair_distribution(ls);
    const auto rep = verify_fair(ls, fd);
    INFO(rep.violation);
    CHECK(rep.ok);
  }
}

TEST_CASE("padded graph bookkeeping matches the construction") {
  // n1=4, n2=4, delta1=2 -> delta2=2, |V| = n1 - delta2 = 2,
  // padded graph on (n1+|V|) + (n1+|V|) = 12 nodes, n2-regular.
  ListSystem ls;
  ls.n1 = ls.n2 = 4;
  ls.delta1 = 2;
  ls.lists = {{1, 2}, {0, 3}, {3, 0}, {2, 1}};
  REQUIRE(is_proper(ls).proper);
  const auto fd = find_fair_distribution(ls);
  CHECK(fd.delta2 == 2);
  std::vector<int> load(ls.n2, 0);
  for (auto& row : fd.f)
    for (int t : row) ++load[t];
  for (int t = 0; t < ls.n2; ++t) CHECK(load[t] == fd.delta2);
}

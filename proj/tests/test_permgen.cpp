#include <catch2/catch_amalgamated.hpp>

#include "pops/permgen.hpp"
#include "pops/router.hpp"
#include "pops/simulator.hpp"

using namespace pops;

namespace {

PermSpec spec_of(PermSpec::Kind kind, int n) {
  PermSpec s;
  s.kind = kind;
  s.n = n;
  return s;
}

}  // namespace

TEST_CASE("reversal") {
  CHECK(generate(spec_of(PermSpec::Kind::reversal, 4)).image() ==
        std::vector<int>{3, 2, 1, 0});
  // involution
  auto r = generate(spec_of(PermSpec::Kind::reversal, 10));
  CHECK(compose(r, r) == identity_permutation(10));
}

TEST_CASE("hypercube flip") {
  auto s = spec_of(PermSpec::Kind::hypercube_flip, 8);
  s.bit = 1;
  CHECK(generate(s).image() == std::vector<int>{2, 3, 0, 1, 6, 7, 4, 5});
  CHECK(compose(generate(s), generate(s)) == identity_permutation(8));

  s.n = 12;  // not a power of two
  CHECK_THROWS_AS(generate(s), Error);
  s.n = 8;
  s.bit = 3;
  CHECK_THROWS_AS(generate(s), Error);
}

TEST_CASE("cyclic shift inverse pairs") {
  auto a = spec_of(PermSpec::Kind::cyclic_shift, 9);
  a.offset = 4;
  auto b = a;
  b.offset = 5;
  CHECK(compose(generate(a), generate(b)) == identity_permutation(9));
}

TEST_CASE("mesh shift") {
  auto s = spec_of(PermSpec::Kind::mesh_shift, 4);
  s.mesh_n = 2;
  s.axis = PermSpec::Axis::column;
  s.direction = 1;
  CHECK(generate(s).image() == std::vector<int>{1, 0, 3, 2});

  s.axis = PermSpec::Axis::row;
  CHECK(generate(s).image() == std::vector<int>{2, 3, 0, 1});

  // down then up cancels
  auto up = s;
  up.axis = PermSpec::Axis::column;
  auto down = up;
  down.direction = -1;
  CHECK(compose(generate(up), generate(down)) == identity_permutation(4));

  s.n = 5;  // not a square of mesh_n
  CHECK_THROWS_AS(generate(s), Error);
}

TEST_CASE("bpc with full complement mask equals reversal") {
  auto s = spec_of(PermSpec::Kind::bpc, 8);
  s.sigma = {0, 1, 2};
  s.mask = 7;
  CHECK(generate(s) == generate(spec_of(PermSpec::Kind::reversal, 8)));
}

TEST_CASE("bpc closure") {
  auto swap01 = spec_of(PermSpec::Kind::bpc, 8);
  swap01.sigma = {1, 0, 2};
  swap01.mask = 0;
  const auto p = generate(swap01);
  CHECK(compose_bpc_checked(p, p) == identity_permutation(8));

  auto m1 = spec_of(PermSpec::Kind::bpc, 8);
  m1.sigma = {0, 1, 2};
  m1.mask = 5;
  auto m2 = m1;
  m2.mask = 3;
  const auto composed = compose_bpc_checked(generate(m1), generate(m2));
  auto expect = m1;
  expect.mask = 5 ^ 3;
  CHECK(composed == generate(expect));
}

TEST_CASE("bpc recovery round-trips on random specs") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 16;
    auto a = spec_of(PermSpec::Kind::bpc, n);
    a.sigma = random_permutation(4, rng()).image();
    a.mask = rng() % n;
    auto b = spec_of(PermSpec::Kind::bpc, n);
    b.sigma = random_permutation(4, rng()).image();
    b.mask = rng() % n;
    const auto composed = compose_bpc_checked(generate(a), generate(b));
    const auto rec = recover_bpc(composed);
    CHECK(bpc_permutation(n, rec.sigma, rec.mask) == composed);
  }
}

TEST_CASE("recover_bpc rejects non-BPC permutations") {
  CHECK_THROWS_AS(recover_bpc(Permutation({1, 2, 3, 0})), Error);
}

TEST_CASE("random permutations are reproducible") {
  CHECK(random_permutation(50, 7) == random_permutation(50, 7));
  CHECK_FALSE(random_permutation(50, 7) == random_permutation(50, 8));
  CHECK(std::string(kPrngId).find("fisher-yates") != std::string::npos);
}

TEST_CASE("all generator outputs are valid permutations") {
  std::vector<Permutation> perms;
  perms.push_back(generate(spec_of(PermSpec::Kind::identity, 16)));
  perms.push_back(generate(spec_of(PermSpec::Kind::reversal, 16)));
  auto rnd = spec_of(PermSpec::Kind::random_shuffle, 16);
  rnd.seed = 3;
  perms.push_back(generate(rnd));
  auto flip = spec_of(PermSpec::Kind::hypercube_flip, 16);
  flip.bit = 3;
  perms.push_back(generate(flip));
  auto mesh = spec_of(PermSpec::Kind::mesh_shift, 16);
  mesh.mesh_n = 4;
  perms.push_back(generate(mesh));
  for (const auto& p : perms)
    CHECK_NOTHROW(validate_permutation(p.image(), 16));
}

TEST_CASE("every family routes in the theorem slot count") {
  // the slot counts previously shown family by family, now uniform
  auto flip = spec_of(PermSpec::Kind::hypercube_flip, 16);
  flip.bit = 2;
  const Permutation pi = generate(flip);
  for (int d : {1, 2, 4, 8, 16}) {
    NetworkConfig cfg(d, 16 / d);
    const auto result = execute(cfg, pi, route(cfg, pi));
    CHECK(result.delivered);
    CHECK(result.slots_used == theorem_slots(cfg));
  }
}

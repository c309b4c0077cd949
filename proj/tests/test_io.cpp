#include <catch2/catch_amalgamated.hpp>

#include "pops/io.hpp"
#include "pops/permgen.hpp"

using namespace pops;

TEST_CASE("permutation text parsing") {
  CHECK(parse_permutation_text("3 2 1 0\n") == std::vector<int>{3, 2, 1, 0});
  CHECK(parse_permutation_text("[3,2,1,0]") == std::vector<int>{3, 2, 1, 0});
  CHECK(parse_permutation_text("{\"perm\": [1, 0]}") ==
        std::vector<int>{1, 0});
  CHECK_THROWS_AS(parse_permutation_text("1 2 x"), Error);
  CHECK_THROWS_AS(parse_permutation_text("{\"nope\": 1}"), Error);
}

TEST_CASE("schedule JSON round-trip and determinism") {
  NetworkConfig cfg(3, 2);
  const auto pi = random_permutation(6, 5);
  const auto schedule = route(cfg, pi);
  const auto j = schedule_to_json(schedule);
  CHECK(j["d"] == 3);
  CHECK(j["g"] == 2);
  CHECK(j["rounds"] == 2);

  const auto back = schedule_from_json(j);
  REQUIRE(back.slots.size() == schedule.slots.size());
  for (std::size_t s = 0; s < back.slots.size(); ++s) {
    CHECK(back.slots[s].transmissions == schedule.slots[s].transmissions);
    CHECK(back.slots[s].receptions == schedule.slots[s].receptions);
  }
  // bit-exact serialization for identical inputs
  CHECK(j.dump() == schedule_to_json(route(cfg, pi)).dump());

  const auto result = execute(cfg, pi, back);
  CHECK(result.delivered);
  const auto verdict = verdict_to_json(result);
  CHECK(verdict["delivered"] == true);
  CHECK(verdict["slots_used"] == 4);
  CHECK(verdict["violations"].empty());
}

TEST_CASE("malformed schedule JSON is rejected") {
  CHECK_THROWS_AS(schedule_from_json(nlohmann::json::parse("{\"d\": 2}")),
                  Error);
  CHECK_THROWS_AS(schedule_from_json(nlohmann::json::parse("[]")), Error);
}

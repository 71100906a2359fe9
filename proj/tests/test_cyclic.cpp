#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tagpcp/cyclic.hpp"

using namespace tagpcp;
using namespace tagpcp::cyclic;

namespace {

std::string random_word(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  std::string w;
  for (std::size_t n = lo + rng() % (hi - lo + 1); n > 0; --n) w += rng() & 1 ? '1' : '0';
  return w;
}

}  // namespace

TEST_SUITE("cyclic") {

TEST_CASE("001,01,11 on 101 for six steps") {
  Config c{Program({"001", "01", "11"}), 0, "101"};
  const std::vector<std::pair<std::size_t, std::string>> want = {
      {1, "01001"}, {2, "1001"}, {0, "00111"}, {1, "0111"}, {2, "111"}, {0, "1111"}};
  for (const auto& [m, w] : want) {
    REQUIRE(step_in_place(c));
    CHECK(c.marker == m);
    CHECK(c.dataword == w);
  }
}

TEST_CASE("empty dataword completes") {
  Config c{Program({"1"}), 0, ""};
  CHECK(std::holds_alternative<Completed>(cyclic_step(c)));
  auto r = cyclic_run(Config{Program({"", ""}), 0, "1010"}, 100);
  CHECK(r.status == RunStatus::Empty);
  CHECK(r.steps == 4);
}

TEST_CASE("cycle detection") {
  auto r = cyclic_run(Config{Program({"1"}), 0, "1"}, 100);
  CHECK(r.status == RunStatus::CycleDetected);
  CHECK(r.cycle_start == 0);
  CHECK(r.steps == 1);
}

TEST_CASE("program parsing") {
  auto p = Program::parse("10\ne\n# note\n011\n");
  REQUIRE(p.size() == 3);
  CHECK(p[1].empty());
  CHECK(Program::parse(p.to_text()) == p);
  CHECK_THROWS_AS(Program::parse("102\n"), Error);
  CHECK_THROWS_AS(Program::parse(""), Error);
}

TEST_CASE("random programs agree with the string oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> apps;
    for (std::size_t n = 1 + rng() % 4; n > 0; --n) apps.push_back(random_word(rng, 0, 4));
    oracle::Cyclic o{apps, 0, random_word(rng, 1, 8)};
    Config c{Program(apps), 0, o.word};
    for (int t = 0; t < 50 && !o.word.empty(); ++t) {
      oracle::cyclic_step(o);
      REQUIRE(step_in_place(c));
      REQUIRE(c.dataword == o.word);
      REQUIRE(c.marker == o.marker);
    }
  }
}

TEST_CASE("replicated program runs step for step") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> apps;
    for (std::size_t n = 1 + rng() % 3; n > 0; --n) apps.push_back(random_word(rng, 0, 3));
    Program p(apps);
    const std::size_t q = 1 + rng() % 4;
    Program r = replicate_program(p, q);
    REQUIRE(r.size() == q * p.size());
    Config a{p, 0, random_word(rng, 1, 6)}, b{r, 0, a.dataword};
    for (int t = 0; t < 40 && !a.dataword.empty(); ++t) {
      step_in_place(a);
      step_in_place(b);
      REQUIRE(a.dataword == b.dataword);
      REQUIRE(b.marker % p.size() == a.marker);
    }
  }
}

TEST_CASE("input-carrying program simulates two steps per step") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> apps;
    for (std::size_t n = 1 + rng() % 3; n > 0; --n) apps.push_back(random_word(rng, 0, 3));
    Program p(apps);
    const std::string w = random_word(rng, 1, 5);
    Program cw = build_cw(p, w);
    REQUIRE(cw.size() == 2 * p.size());
    Config a{p, 0, w}, b{cw, 0, "1"};
    step_in_place(b);
    REQUIRE(even_projection(b.dataword) == a.dataword);
    for (int t = 0; t < 30 && !a.dataword.empty(); ++t) {
      step_in_place(a);
      step_in_place(b);
      step_in_place(b);
      REQUIRE(even_projection(b.dataword) == a.dataword);
      REQUIRE(b.marker == 2 * a.marker + 1);
    }
  }
  CHECK(interleave_zeros("101") == "100010");
  CHECK_THROWS_AS(build_cw(Program({"1"}), ""), Error);
}

}  // TEST_SUITE

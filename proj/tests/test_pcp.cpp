#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tagpcp/pcp.hpp"

using namespace tagpcp;
using namespace tagpcp::pcp;

namespace {

std::map<char, std::string> toy_rules(const std::string& body) {
  return {{'b', "b"}, {'c', body + "b"}};
}

std::vector<std::pair<std::string, std::string>> raw(const Instance& inst) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& p : inst.pairs) out.emplace_back(p.r.expand(), p.v.expand());
  return out;
}

}  // namespace

TEST_SUITE("pcp") {

TEST_CASE("words: runs, parsing and printing") {
  Word w = Word::parse("1(0^12)1");
  CHECK(w.size() == 14);
  CHECK(w.expand() == "1" + std::string(12, '0') + "1");
  CHECK(w.to_text() == "1(0^12)1");
  CHECK(Word::parse("()").empty());
  CHECK(Word::parse(Word::literal("1100000001").to_text()) == Word::literal("1100000001"));
  CHECK_THROWS_AS(Word::parse("1(0^)"), Error);
  CHECK_THROWS_AS(Word::parse("1(0^x)"), Error);
  Word a = Word::literal("10");
  a.append(Word::literal("01"));
  CHECK(a.runs() == std::vector<Run>{{'1', 1}, {'0', 2}, {'1', 1}});
}

TEST_CASE("encoded words agree with literal expansion") {
  auto body = std::make_shared<PackedSymbols>(1);
  std::string lit;
  for (char ch : std::string("cbbcb")) {
    body->push_back(ch == 'c' ? compiler::kC : compiler::kB);
    lit += ch == 'c' ? "1" : "1" + std::string(3, '0') + "1";
  }
  Word e = Word::encoded(body, 3);
  CHECK(e.size() == lit.size());
  CHECK(e.expand() == lit);
  CHECK(e == Word::literal(lit));
}

TEST_CASE("instance file round trip and errors") {
  auto inst = Instance::parse("# pairs\n1\t111\n(1^2)0 ()\n");
  REQUIRE(inst.pairs.size() == 2);
  CHECK(inst.pairs[1].r.expand() == "110");
  CHECK(inst.pairs[1].v.empty());
  CHECK(Instance::parse(inst.to_text()).to_text() == inst.to_text());
  CHECK_THROWS_WITH_AS(Instance::parse("1 1\n1\n"), doctest::Contains("line 2"), Error);
  CHECK_THROWS_AS(Instance::parse("\n"), Error);
}

TEST_CASE("four-pair reduction of a toy system") {
  // c -> cbb b; the encoded part is c, b, b
  auto shape = RuleShape::from_body(2, "cbb");
  auto inst = reduce_to_pcp(shape);
  REQUIRE(inst.pairs.size() == 4);
  CHECK(inst.pairs[0].r.expand() == "1");
  CHECK(inst.pairs[0].v.expand() == "1" + std::string("1") + "1001" + "1001" + "10");
  CHECK(inst.pairs[1].r.expand() == "1001");
  CHECK(inst.pairs[1].v.expand() == "110");
  CHECK(inst.pairs[2].r.expand() == "100");
  CHECK(inst.pairs[2].v.empty());
  CHECK(inst.pairs[3].r.expand() == "1");
  CHECK(inst.pairs[3].v.expand() == "0");
}

TEST_CASE("rule shape validation") {
  CHECK_THROWS_AS(RuleShape::from_body(1, "cb"), Error);
  CHECK_THROWS_AS(RuleShape::from_body(2, "ca"), Error);
  auto bad = tagcore::TagSystem::from_rules(2, {{'b', "bb"}, {'c', "cb"}});
  CHECK_THROWS_AS(RuleShape::from_tag_system(bad), Error);
  auto ok = tagcore::TagSystem::from_rules(3, {{'b', "b"}, {'c', "cbccb"}});
  CHECK(RuleShape::from_tag_system(ok).body->to_string("bc") == "cbcc");
}

TEST_CASE("budget zero applies only the forced first pair") {
  auto shape = RuleShape::from_body(2, "cb");
  auto inst = reduce_to_pcp(shape);
  auto rep = match_replay(inst, shape, 0);
  CHECK(rep.indices == std::vector<std::size_t>{0});
  CHECK(rep.final_config.surplus.to_string() == inst.pairs[0].v.expand().substr(1));
}

TEST_CASE("bootstrap leaves the encoded input") {
  auto shape = RuleShape::from_body(3, "cbcc");
  auto inst = reduce_to_pcp(shape);
  PcpConfig cfg;
  for (int k = 0; k < 3; ++k) cfg = guided_match_step(cfg, inst, 3).cfg;  // pair 1, two deletions
  const std::string s = cfg.surplus.to_string();
  CHECK(oracle::decode_surplus(s, 3) == std::string("ccb"));  // (cbcc b) without its first two
}

TEST_CASE("surplus tracks the tag dataword step by step") {
  for (auto [beta, body] : std::vector<std::pair<std::uint64_t, std::string>>{
           {2, "bbbcbb"}, {3, "cccb"}, {3, "bbcc"}, {4, "ccbcbb"}, {8, "ccbbbbbcbbbbbb"}}) {
    CAPTURE(body);
    auto shape = RuleShape::from_body(beta, body);
    auto inst = reduce_to_pcp(shape);
    const auto rules = toy_rules(body);
    std::string w = (body + "b").substr(beta - 1);
    PcpConfig cfg;
    for (std::uint64_t k = 0; k < beta; ++k) cfg = guided_match_step(cfg, inst, beta).cfg;
    for (int t = 0; t < 10; ++t) {
      REQUIRE(oracle::decode_surplus(cfg.surplus.to_string(), beta) == w);
      CHECK(w.size() % (beta - 1) == 1 % (beta - 1));
      CHECK(cfg.r_length + cfg.surplus.size() == cfg.v_length);
      auto next = oracle::tag_step(w, beta, rules);
      if (!next || w.size() < beta) break;
      w = *next;
      for (std::uint64_t k = 0; k < beta; ++k) cfg = guided_match_step(cfg, inst, beta).cfg;
    }
  }
}

TEST_CASE("halting toy matches, looping toy runs out of budget") {
  auto h = RuleShape::from_body(2, "bbbcbb");
  auto ih = reduce_to_pcp(h);
  auto rh = match_replay(ih, h, 100, {.probe_alternatives = true});
  CHECK(rh.outcome == ReplayOutcome::Match);
  CHECK(rh.tag_steps == 23);
  CHECK(verify_solution(ih, rh.indices));
  CHECK(rh.length_law_violations == 0);
  CHECK(rh.unexplained_alternatives == 0);
  // independent check of the match by plain concatenation
  std::string top, bot;
  for (auto i : rh.indices) {
    top += ih.pairs[i].r.expand();
    bot += ih.pairs[i].v.expand();
  }
  CHECK(top == bot);
  CHECK(top.size() == rh.match_length);

  auto l = RuleShape::from_body(3, "cccb");
  auto il = reduce_to_pcp(l);
  auto rl = match_replay(il, l, 60, {.probe_alternatives = true});
  CHECK(rl.outcome == ReplayOutcome::BudgetExhausted);
  CHECK(rl.tag_steps == 60);
  CHECK(rl.decoded_checks == 61);
  CHECK(rl.unexplained_alternatives == 0);
}

TEST_CASE("guided choice is the only survivor apart from the b-head case") {
  auto shape = RuleShape::from_body(3, "cbcc");
  auto inst = reduce_to_pcp(shape);
  PcpConfig cfg;
  std::uint64_t b_head_rule_steps = 0;
  for (int op = 0; op < 60; ++op) {
    auto choices = audit_choices(cfg, inst, 3);
    std::size_t viable = 0;
    for (std::size_t i = 0; i < 4; ++i)
      if (choices[i] == Choice::Viable) ++viable;
    const auto& runs = cfg.surplus.runs();
    const bool rule_due = phase_of(cfg, 3) == Phase::RuleDue;
    const bool b_head = runs.size() >= 2 && runs[0] == Run{'1', 1} && runs[1].sym == '0';
    if (rule_due && b_head) {
      ++b_head_rule_steps;
      CHECK(viable <= 1);
    } else {
      CHECK(viable == 0);
    }
    auto g = guided_match_step(cfg, inst, 3);
    cfg = g.cfg;
    if (g.matched) break;
  }
  CHECK(b_head_rule_steps > 0);
}

TEST_CASE("doomed predicate") {
  Surplus s;
  s.append(Word::literal("0"));
  CHECK(doomed(s, 2));
  Surplus t;
  t.append(Word::literal("1000"));
  CHECK(doomed(t, 2));
  Surplus u;
  u.append(Word::literal("1001100"));
  CHECK_FALSE(doomed(u, 2));
  Surplus v;
  v.append(Word::literal("101100"));
  CHECK(doomed(v, 2));
}

TEST_CASE("breadth first solver on known instances") {
  auto a = bfs_solve(Instance::parse("1 1\n"), 5);
  CHECK(a.status == SolveStatus::Found);
  CHECK(a.indices == std::vector<std::size_t>{0});

  auto inst = Instance::parse("1 111\n10111 10\n10 0\n");
  auto b = bfs_solve(inst, 12);
  REQUIRE(b.status == SolveStatus::Found);
  CHECK(b.indices == std::vector<std::size_t>{1, 0, 0, 2});
  CHECK(verify_solution(inst, b.indices));
  std::string top, bot;
  for (auto i : b.indices) {
    top += inst.pairs[i].r.expand();
    bot += inst.pairs[i].v.expand();
  }
  CHECK(top == "101111110");
  CHECK(bot == "101111110");

  auto c = bfs_solve(Instance::parse("ab a\n"), 30);
  CHECK(c.status == SolveStatus::NoneWithinDepth);
  CHECK(c.exhausted);

  CHECK_THROWS_AS(bfs_solve(inst, 12, 3), Error);
}

TEST_CASE("verify_solution edge cases") {
  auto inst = Instance::parse("1 111\n10111 10\n10 0\n");
  CHECK_THROWS_AS(verify_solution(inst, {}), Error);
  CHECK_THROWS_AS(verify_solution(inst, {3}), Error);
  CHECK_FALSE(verify_solution(inst, {0}));
  CHECK_FALSE(verify_solution(inst, {2}));
}

TEST_CASE("solver agrees with plain enumeration on random small instances") {
  std::mt19937_64 rng(2024);
  const auto words = oracle::binary_words(1, 3);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string text;
    for (std::size_t n = 1 + rng() % 3; n > 0; --n) {
      pairs.emplace_back(words[rng() % words.size()], words[rng() % words.size()]);
      text += pairs.back().first + " " + pairs.back().second + "\n";
    }
    auto inst = Instance::parse(text);
    auto want = oracle::enumerate_pcp(pairs, 8);
    auto got = bfs_solve(inst, 8);
    CAPTURE(text);
    REQUIRE((got.status == SolveStatus::Found) == want.found);
    if (want.found) {
      CHECK(got.indices == want.indices);
      CHECK(verify_solution(inst, got.indices));
    }
  }
}

TEST_CASE("reduction instances have a raw form the solver accepts") {
  auto shape = RuleShape::from_body(2, "bc");
  auto inst = reduce_to_pcp(shape);
  auto rep = match_replay(inst, shape, 50);
  REQUIRE(rep.outcome == ReplayOutcome::Match);
  auto sol = bfs_solve(inst, rep.indices.size());
  REQUIRE(sol.status == SolveStatus::Found);
  CHECK(sol.indices.size() <= rep.indices.size());
  CHECK(oracle::enumerate_pcp(raw(inst), 12).indices.size() == sol.indices.size());
}

}  // TEST_SUITE

#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tagpcp/simulator.hpp"

using namespace tagpcp;
using namespace tagpcp::simulator;
using compiler::ObjectKind;

namespace {

const compiler::CompiledSystem& sys20() {
  static const auto s = compiler::compile(cyclic::Program({"10", "11"}), {.x = 20});
  return s;
}

const compiler::CompiledSystem& sys18() {
  static const auto s = compiler::compile(cyclic::Program({"1", "1"}), {.x = 18});
  return s;
}

void check_against_cyclic(const compiler::CompiledSystem& s, const std::string& w,
                          std::uint64_t steps) {
  SimOptions so;
  so.decode_symbol_state = true;
  auto res = simulate(s, w, steps, EngineKind::Both, so);
  REQUIRE(res.steps.size() == steps);
  oracle::Cyclic o{s.base.appendants(), 0, w};
  for (const auto& st : res.steps) {
    CAPTURE(st.step);
    oracle::cyclic_step(o);
    CHECK(st.payload == o.word);
    if (st.next_md) CHECK(st.next_md->m % s.base.size() == o.marker);
  }
}

}  // namespace

TEST_SUITE("simulator") {

TEST_CASE("both engines agree and track the cyclic run at x = 20") {
  check_against_cyclic(sys20(), "1", 10);
  check_against_cyclic(sys20(), "101", 10);
}

TEST_CASE("both engines agree and track the cyclic run at x = 18") {
  check_against_cyclic(sys18(), "11", 10);
}

TEST_CASE("zero steps gives no records") {
  auto res = simulate(sys20(), "1", 0, EngineKind::Both);
  CHECK(res.records.empty());
  CHECK(res.steps.empty());
}

TEST_CASE("per-object shift bookkeeping") {
  const auto& s = sys20();
  const auto& pr = s.params;
  auto res = simulate(s, "1", 70, EngineKind::Object);
  REQUIRE(res.records.size() > 1);
  std::vector<const ObjectRecord*> payload;
  for (std::size_t i = 0; i + 1 < res.records.size(); ++i) {
    const auto& r = res.records[i];
    std::uint64_t delta = r.kind == ObjectKind::EpsPrime ? pr.z2 : r.kind == ObjectKind::Eps ? 0 : pr.z1;
    CHECK(res.records[i + 1].entry_shift == (r.entry_shift + delta) % pr.beta);
    CHECK(r.exit_shift == res.records[i + 1].entry_shift);
    // garbage objects leave m alone
    if (!compiler::is_payload(r.kind) && r.md) {
      auto after = shift_decode(r.exit_shift, pr);
      REQUIRE(after);
      CHECK(after->m == r.md->m);
    }
    if (compiler::is_payload(r.kind)) payload.push_back(&r);
  }
  // reading 3x - 2 payload objects brings m back
  const std::size_t period = 3 * pr.x - 2;
  REQUIRE(payload.size() > period);
  for (std::size_t i = 0; i + period < payload.size(); ++i)
    CHECK(payload[i]->md->m == payload[i + period]->md->m);
}

TEST_CASE("shift decoding matches a brute force table") {
  const auto pr = compiler::Params::at(2, 16, 0);
  std::vector<int> m_of(pr.beta, -1), d_of(pr.beta, -1);
  for (std::uint32_t m = 0; m < 3 * pr.x - 2; ++m)
    for (std::uint32_t d = 0; d < 3 * pr.x + 1; ++d) {
      auto z = (pr.z1 * m + pr.z2 * d) % pr.beta;
      if (m_of[z] < 0) {
        m_of[z] = static_cast<int>(m);
        d_of[z] = static_cast<int>(d);
      }
    }
  ShiftTable table(pr);
  for (std::uint64_t z = 0; z < pr.beta; ++z) {
    auto md = table.decode(z);
    if (m_of[z] < 0) {
      CHECK_FALSE(md.has_value());
    } else {
      REQUIRE(md.has_value());
      CHECK(md->m == static_cast<std::uint32_t>(m_of[z]));
      CHECK(md->d == static_cast<std::uint32_t>(d_of[z]));
    }
  }
}

TEST_CASE("read patterns parse back into objects") {
  const std::uint64_t x = 16;
  std::string reads;
  const std::vector<ObjectKind> kinds = {ObjectKind::One, ObjectKind::Eps, ObjectKind::Zero,
                                         ObjectKind::EpsPrime, ObjectKind::Eps};
  for (auto k : kinds) reads += compiler::read_pattern(k, x);
  auto parsed = parse_reads(reads, x);
  REQUIRE(parsed.has_value());
  CHECK(*parsed == kinds);
  CHECK_FALSE(parse_reads("cbx", x).has_value());
}

TEST_CASE("halting appendant empties to b and halts; control does not") {
  auto h = compiler::apply_halting_variant(sys20(), 7);
  const std::uint64_t budget = 4000000;
  auto rep = run_to_halt(h, "1", budget);
  CHECK(rep.halting_block_seen);
  CHECK(rep.halted);
  CHECK(rep.rounds_to_all_b <= 2);
  CHECK(rep.shrink_steps == rep.predicted_shrink_steps);
  auto ctl = run_to_halt(sys20(), "1", rep.tag_steps + 1000);
  CHECK_FALSE(ctl.halted);
}

TEST_CASE("polynomial fit recovers exact coefficients") {
  std::vector<double> xs, ys;
  for (int t = 0; t < 20; ++t) {
    xs.push_back(t);
    ys.push_back(3.0 + 2.0 * t + 0.5 * t * t);
  }
  auto f = fit_polynomial(xs, ys, 2);
  REQUIRE(f.coeffs.size() == 3);
  CHECK(f.coeffs[0] == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(f.coeffs[1] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(f.coeffs[2] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("complexity probe grows linearly in objects") {
  auto rows = complexity_probe(sys20(), "1", 30);
  REQUIRE(rows.size() == 30);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].objects_total > rows[i - 1].objects_total);
    CHECK(rows[i].tag_steps > rows[i - 1].tag_steps);
  }
  // quadratic upper bound: doubling t at most quadruples the work
  for (std::size_t k = 5; 2 * k <= rows.size(); ++k)
    CHECK(rows[2 * k - 1].tag_steps <= 4.2 * rows[k - 1].tag_steps);
}

}  // TEST_SUITE

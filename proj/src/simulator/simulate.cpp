#include <chrono>

#include "tagpcp/simulator.hpp"

namespace tagpcp::simulator {

namespace {

std::string describe(const ObjectRecord& r) {
  std::string s = std::string(r.untracked ? "raw" : compiler::kind_name(r.kind)) +
                  " shift=" + std::to_string(r.entry_shift) +
                  " read=" + std::to_string(r.symbols_read) +
                  " exit=" + std::to_string(r.exit_shift) + " appended=" +
                  (r.halting_block ? "halt" : compiler::kinds_to_string(r.appended));
  return s;
}

void compare(const ObjectRecord& a, const ObjectRecord& b, std::uint64_t index) {
  bool same = a.kind == b.kind && a.untracked == b.untracked && a.entry_shift == b.entry_shift &&
              a.symbols_read == b.symbols_read && a.exit_shift == b.exit_shift &&
              a.halting_block == b.halting_block && (a.halting_block || a.appended == b.appended);
  if (!same)
    fail(ErrorCode::Divergence, "object #" + std::to_string(index) + ": object engine [" +
                                    describe(a) + "] vs symbol engine [" + describe(b) + "]");
}

}  // namespace

SimResult simulate(const CompiledSystem& sys, std::string_view w, std::uint64_t cts_steps,
                   EngineKind engine, const SimOptions& options) {
  const bool pcp = sys.variant == compiler::Variant::PcpReady;
  const bool use_obj = engine != EngineKind::Symbol;
  bool use_sym = engine != EngineKind::Object;

  std::optional<ObjectEngine> oe;
  std::optional<SymbolEngine> se;
  if (use_obj) oe.emplace(pcp ? ObjectEngine::pcp_ready(sys) : ObjectEngine::for_input(sys, w));
  if (use_sym) {
    se.emplace(pcp ? SymbolEngine::pcp_ready(sys) : SymbolEngine(sys, w));
    if (pcp) {
      ObjectRecord boot = se->consume();
      if (boot.appended != std::vector<ObjectKind>{ObjectKind::OnePrime} ||
          boot.exit_shift != 3 * sys.params.x)
        fail(ErrorCode::Divergence, "bootstrap word did not append the bootstrap object at shift 3x: " +
                                        describe(boot));
    }
  }

  SimResult res;
  if (use_obj) {
    res.initial = oe->state();
  } else if (!pcp) {
    res.initial = decode_engine(*se, sys).state;
  } else {
    res.initial.objects.push_back(ObjectKind::OnePrime);
    res.initial.entry_shift = se->head_offset();
  }

  std::uint64_t index = 0;
  auto has_payload = [&] { return use_obj ? oe->has_payload() : se->has_payload(); };
  auto front_is_garbage = [&] {
    if (use_obj) return !oe->empty() && !compiler::is_payload(oe->front());
    auto f = se->front();
    return f && !compiler::is_payload(*f);
  };
  auto consume = [&](std::uint64_t step) {
    ObjectRecord rec;
    if (use_obj) rec = oe->consume();
    if (use_sym) {
      ObjectRecord srec = se->consume();
      if (use_obj) compare(rec, srec, index);
      else rec = srec;
    }
    rec.step = step;
    ++index;
    res.halting_block = res.halting_block || rec.halting_block;
    res.records.push_back(std::move(rec));
  };

  for (std::uint64_t step = 1; step <= cts_steps; ++step) {
    if (!has_payload()) {
      res.completed = true;
      break;
    }
    if (use_sym && engine == EngineKind::Both && step > options.symbol_step_cap) {
      use_sym = false;
      se.reset();
    }
    while (front_is_garbage()) consume(step);
    consume(step);
    if (res.halting_block) break;
    while (has_payload() && front_is_garbage()) consume(step);

    StepSummary sum;
    sum.step = step;
    if (use_obj) {
      const ObjectState& st = oe->state();
      sum.payload = st.payload();
      sum.objects_total = st.objects.size();
      sum.eps = st.count(ObjectKind::Eps);
      sum.eps_prime = st.count(ObjectKind::EpsPrime);
      sum.tag_steps = oe->tag_steps();
      sum.next_md = shift_decode(st.entry_shift, sys.params);
    }
    if (use_sym && (!use_obj || options.decode_symbol_state)) {
      DecodeResult d = decode_engine(*se, sys);
      if (use_obj && (d.state.objects != oe->state().objects ||
                      d.state.entry_shift != oe->state().entry_shift))
        fail(ErrorCode::Divergence, "decoded literal dataword differs from the object state after step " +
                                        std::to_string(step));
      sum.payload = d.payload;
      sum.objects_total = d.state.objects.size();
      sum.eps = d.eps;
      sum.eps_prime = d.eps_prime;
      sum.tag_steps = se->tag_steps();
      sum.next_md = shift_decode(d.state.entry_shift, sys.params);
    }
    res.steps.push_back(std::move(sum));
    if (!has_payload()) {
      res.completed = true;
      break;
    }
  }
  if (use_obj) res.final_state = oe->state();
  else if (!pcp && !res.halting_block) res.final_state = decode_engine(*se, sys).state;
  return res;
}

std::vector<ProbeRow> complexity_probe(const CompiledSystem& sys, std::string_view w,
                                       std::uint64_t t) {
  if (t < 1) fail(ErrorCode::InvalidArgument, "probe needs t >= 1");
  ObjectEngine oe = sys.variant == compiler::Variant::PcpReady ? ObjectEngine::pcp_ready(sys)
                                                               : ObjectEngine::for_input(sys, w);
  std::vector<ProbeRow> rows;
  auto t0 = std::chrono::steady_clock::now();
  for (std::uint64_t step = 1; step <= t && oe.has_payload(); ++step) {
    while (!compiler::is_payload(oe.front())) oe.consume();
    ObjectRecord r = oe.consume();
    if (r.halting_block) break;
    while (oe.has_payload() && !compiler::is_payload(oe.front())) oe.consume();
    const ObjectState& st = oe.state();
    ProbeRow row;
    row.step = step;
    row.objects_total = st.objects.size();
    row.eps_count = st.count(ObjectKind::Eps);
    row.eps_prime_count = st.count(ObjectKind::EpsPrime);
    row.payload_count = row.objects_total - row.eps_count - row.eps_prime_count;
    row.tag_steps = oe.tag_steps();
    row.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rows.push_back(row);
  }
  return rows;
}

HaltReport run_to_halt(const CompiledSystem& sys, std::string_view w, std::uint64_t max_tag_steps) {
  HaltReport rep;
  SymbolEngine se = sys.variant == compiler::Variant::PcpReady ? SymbolEngine::pcp_ready(sys)
                                                               : SymbolEngine(sys, w);
  const std::uint64_t beta = sys.params.beta;
  // Phase 1: object-granular reading until the halting block is read.
  while (se.tag_steps() < max_tag_steps && !se.halted() && !se.empty()) {
    ObjectRecord r;
    try {
      r = se.consume();
    } catch (const Error&) {
      break;
    }
    if (r.halting_block) {
      rep.halting_block_seen = true;
      rep.block_consumed_at = se.tag_steps();
      break;
    }
  }
  se.set_recording(false);
  // Phase 2: count rounds until the dataword is all b.
  std::uint64_t round_end = se.deleted() + se.length();
  if (rep.halting_block_seen) {
    rep.rounds_to_all_b = 1;
    while (!se.all_b() && se.tag_steps() < max_tag_steps) {
      if (!se.step()) break;
      if (se.deleted() >= round_end) {
        ++rep.rounds_to_all_b;
        round_end = se.deleted() + se.length();
      }
    }
    if (se.all_b()) {
      rep.all_b_at = se.tag_steps();
      rep.all_b_length = se.length();
      rep.predicted_shrink_steps =
          rep.all_b_length >= beta ? (rep.all_b_length - beta) / (beta - 1) + 1 : 0;
    }
  }
  // Phase 3: run to halt or budget.
  while (se.tag_steps() < max_tag_steps && se.step()) {
  }
  rep.halted = se.halted();
  rep.tag_steps = se.tag_steps();
  rep.final_length = se.length();
  if (rep.halting_block_seen && se.all_b()) rep.shrink_steps = rep.tag_steps - rep.all_b_at;
  return rep;
}

}  // namespace tagpcp::simulator

#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tagpcp/compiler.hpp"
#include "tagpcp/tagcore.hpp"

namespace tagpcp::simulator {

using compiler::CompiledSystem;
using compiler::ObjectKind;

struct ObjectState {
  std::deque<ObjectKind> objects;
  std::uint64_t entry_shift = 0;
  std::uint64_t steps_elapsed = 0;

  std::string payload() const;  // One -> 1, Zero -> 0
  std::uint64_t count(ObjectKind k) const;
  bool has_payload() const;
};

struct MD {
  std::uint32_t m = 0;
  std::uint32_t d = 0;
  bool operator==(const MD&) const = default;
};

class ShiftTable {
 public:
  explicit ShiftTable(const compiler::Params& params);
  std::optional<MD> decode(std::uint64_t z) const;
  std::uint64_t size() const { return set_.shifts.size(); }

 private:
  compiler::ShiftSet set_;
};

std::optional<MD> shift_decode(std::uint64_t z, const compiler::Params& params);

struct ObjectRecord {
  std::uint64_t step = 0;  // simulated cyclic step, starting at 1
  ObjectKind kind = ObjectKind::Eps;
  std::uint64_t entry_shift = 0;
  std::optional<MD> md;
  std::vector<ObjectKind> appended;
  bool halting_block = false;
  bool untracked = false;  // read sequence did not split into object patterns
  std::uint64_t symbols_read = 0;
  std::uint64_t exit_shift = 0;
};

std::string trace_header();
std::string trace_line(const ObjectRecord& r);

// Appended kinds and exit shift when `kind` is read with entry shift z.
ObjectRecord object_step(ObjectState& st, const CompiledSystem& sys, const ShiftTable& table);

class ObjectEngine {
 public:
  ObjectEngine(const CompiledSystem& sys, ObjectState initial);
  static ObjectEngine for_input(const CompiledSystem& sys, std::string_view w);
  static ObjectEngine pcp_ready(const CompiledSystem& sys);

  const ObjectState& state() const { return st_; }
  bool empty() const { return st_.objects.empty(); }
  ObjectKind front() const { return st_.objects.front(); }
  bool has_payload() const { return payload_ > 0; }
  bool stopped() const { return stopped_; }
  ObjectRecord consume();
  std::uint64_t tag_steps() const { return st_.steps_elapsed; }

 private:
  const CompiledSystem* sys_;
  ShiftTable table_;
  ObjectState st_;
  std::uint64_t payload_ = 0;
  bool stopped_ = false;
};

// Literal execution of b -> b, c -> rule word. The dataword is a rope of
// b-runs and references into the rule word.
class SymbolEngine {
 public:
  struct Segment {
    bool u = false;
    std::uint64_t start = 0;  // offset into the rule word for u segments
    std::uint64_t len = 0;
  };

  SymbolEngine(const CompiledSystem& sys, std::string_view w);
  static SymbolEngine pcp_ready(const CompiledSystem& sys);

  // One tag step; false when |w| < beta.
  bool step();
  // Tag steps until the leftmost tracked span is consumed.
  ObjectRecord consume();

  std::uint64_t length() const { return length_; }
  std::uint64_t tag_steps() const { return tag_steps_; }
  std::uint64_t deleted() const { return deleted_; }
  std::uint64_t appended() const { return appended_; }
  bool all_b() const;
  bool halted() const { return length_ < beta_; }

  bool empty() const { return spans_.empty(); }
  bool has_payload() const { return payload_ > 0; }
  // Kind of the leftmost span; nullopt for untracked material.
  std::optional<ObjectKind> front() const;
  std::uint64_t head_offset() const { return head_pos_; }
  const std::deque<Segment>& segments() const { return rope_; }
  PackedSymbols materialize(std::uint64_t limit = ~std::uint64_t{0}) const;
  // Span records are kept only while this is set.
  void set_recording(bool on);

 private:
  struct Span {
    std::optional<ObjectKind> kind;
    std::uint64_t len = 0;
  };

  SymbolEngine(const CompiledSystem& sys);
  std::uint8_t head_symbol() const;
  void drop(std::uint64_t n);
  void push_b(std::uint64_t n);
  void push_u();
  void finish_span(ObjectRecord& rec);

  const CompiledSystem* sys_;
  std::uint64_t beta_;
  std::deque<Segment> rope_;
  std::uint64_t length_ = 0;
  std::uint64_t u_segments_ = 0;
  std::uint64_t tag_steps_ = 0;
  std::uint64_t deleted_ = 0;
  std::uint64_t appended_ = 0;

  std::deque<Span> spans_;
  std::uint64_t head_pos_ = 0;
  std::uint64_t payload_ = 0;
  std::string reads_;
  std::uint64_t span_entry_ = 0;
  std::deque<ObjectRecord> finished_;
  bool recording_ = true;
  ShiftTable table_;
};

// Splits a read sequence into object read patterns.
std::optional<std::vector<ObjectKind>> parse_reads(std::string_view reads, std::uint64_t x);

struct DecodeResult {
  ObjectState state;
  std::string payload;
  std::uint64_t eps = 0;
  std::uint64_t eps_prime = 0;
};

DecodeResult decode_dataword(const tagcore::Dataword& w, const CompiledSystem& sys);
DecodeResult decode_engine(const SymbolEngine& e, const CompiledSystem& sys);

enum class EngineKind { Object, Symbol, Both };

struct StepSummary {
  std::uint64_t step = 0;
  std::string payload;        // simulated cyclic dataword after the step
  std::optional<MD> next_md;  // decoded shift of the next payload object
  std::uint64_t objects_total = 0;
  std::uint64_t eps = 0;
  std::uint64_t eps_prime = 0;
  std::uint64_t tag_steps = 0;
};

struct SimOptions {
  std::uint64_t symbol_step_cap = 12;
  bool decode_symbol_state = false;  // re-parse the symbol rope after every step
};

struct SimResult {
  std::vector<ObjectRecord> records;
  std::vector<StepSummary> steps;
  ObjectState initial;
  ObjectState final_state;
  bool completed = false;  // no payload object left
  bool halting_block = false;
};

SimResult simulate(const CompiledSystem& sys, std::string_view w, std::uint64_t cts_steps,
                   EngineKind engine, const SimOptions& options = {});

struct ProbeRow {
  std::uint64_t step = 0;
  std::uint64_t objects_total = 0;
  std::uint64_t eps_count = 0;
  std::uint64_t eps_prime_count = 0;
  std::uint64_t payload_count = 0;
  std::uint64_t tag_steps = 0;
  double wall_seconds = 0;
};

std::vector<ProbeRow> complexity_probe(const CompiledSystem& sys, std::string_view w,
                                       std::uint64_t t);

struct HaltReport {
  bool halted = false;
  bool halting_block_seen = false;
  std::uint64_t tag_steps = 0;
  std::uint64_t final_length = 0;
  std::uint64_t block_consumed_at = 0;  // tag step
  std::uint64_t all_b_at = 0;           // tag step
  std::uint64_t all_b_length = 0;
  std::uint64_t rounds_to_all_b = 0;    // rounds after the block was consumed
  std::uint64_t predicted_shrink_steps = 0;
  std::uint64_t shrink_steps = 0;
};

// Runs the literal engine until halt or the tag-step budget.
HaltReport run_to_halt(const CompiledSystem& sys, std::string_view w, std::uint64_t max_tag_steps);

struct Fit {
  std::vector<double> coeffs;  // lowest degree first
  double r2 = 0;
};
Fit fit_polynomial(const std::vector<double>& xs, const std::vector<double>& ys, int degree);

}  // namespace tagpcp::simulator

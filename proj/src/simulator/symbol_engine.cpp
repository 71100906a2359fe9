#include <algorithm>

#include "tagpcp/simulator.hpp"

namespace tagpcp::simulator {

using compiler::kB;
using compiler::kC;

std::optional<std::vector<ObjectKind>> parse_reads(std::string_view reads, std::uint64_t x) {
  static thread_local std::uint64_t cached_x = 0;
  static thread_local std::vector<std::pair<ObjectKind, std::string>> patterns;
  if (cached_x != x) {
    patterns.clear();
    for (ObjectKind k : {ObjectKind::One, ObjectKind::OnePrime, ObjectKind::Zero,
                         ObjectKind::EpsPrime, ObjectKind::Eps})
      patterns.emplace_back(k, compiler::read_pattern(k, x));
    cached_x = x;
  }
  std::vector<ObjectKind> out;
  std::size_t pos = 0;
  while (pos < reads.size()) {
    bool hit = false;
    for (const auto& [k, p] : patterns) {
      if (reads.compare(pos, p.size(), p) == 0) {
        out.push_back(k);
        pos += p.size();
        hit = true;
        break;
      }
    }
    if (!hit) return std::nullopt;
  }
  return out;
}

SymbolEngine::SymbolEngine(const CompiledSystem& sys)
    : sys_(&sys), beta_(sys.params.beta), table_(sys.params) {}

SymbolEngine::SymbolEngine(const CompiledSystem& sys, std::string_view w) : SymbolEngine(sys) {
  if (w.empty()) fail(ErrorCode::InvalidArgument, "input word must be non-empty");
  cyclic::check_binary(w, "input word");
  if (sys.variant != compiler::Variant::Standard)
    fail(ErrorCode::InvalidArgument, "object input needs a standard compiled system");
  for (char ch : w) {
    ObjectKind k = ch == '1' ? ObjectKind::One : ObjectKind::Zero;
    for (const auto& run : sys.tmpl(k).skeleton) {
      if (!run.u) push_b(run.count);
      else
        for (std::uint64_t i = 0; i < run.count; ++i) push_u();
    }
    spans_.push_back({k, sys.params.object_length(k)});
    ++payload_;
  }
  appended_ = 0;
}

SymbolEngine SymbolEngine::pcp_ready(const CompiledSystem& sys) {
  if (sys.variant != compiler::Variant::PcpReady)
    fail(ErrorCode::InvalidArgument, "not a PCP-ready system");
  SymbolEngine e(sys);
  const std::uint64_t from = sys.params.beta - 1;
  const std::uint64_t len = sys.rule_word.size() - from;
  e.rope_.push_back({true, from, len});
  e.u_segments_ = 1;
  e.length_ = len;
  // Object boundaries sit one symbol left of the appended words, so the
  // input's final b opens the first appended object.
  e.spans_.push_back({std::nullopt, len - 1});
  return e;
}

void SymbolEngine::set_recording(bool on) {
  recording_ = on;
  if (!on) finished_.clear();
}

std::uint8_t SymbolEngine::head_symbol() const {
  const Segment& s = rope_.front();
  return s.u ? sys_->rule_word[s.start] : kB;
}

void SymbolEngine::drop(std::uint64_t n) {
  length_ -= n;
  deleted_ += n;
  while (n > 0) {
    Segment& s = rope_.front();
    std::uint64_t take = std::min(n, s.len);
    s.len -= take;
    if (s.u) s.start += take;
    n -= take;
    if (s.len == 0) {
      if (s.u) --u_segments_;
      rope_.pop_front();
    }
  }
}

void SymbolEngine::push_b(std::uint64_t n) {
  if (!rope_.empty() && !rope_.back().u) rope_.back().len += n;
  else rope_.push_back({false, 0, n});
  length_ += n;
  appended_ += n;
}

void SymbolEngine::push_u() {
  rope_.push_back({true, 0, sys_->rule_word.size()});
  ++u_segments_;
  length_ += sys_->rule_word.size();
  appended_ += sys_->rule_word.size();
}

bool SymbolEngine::all_b() const {
  if (u_segments_ == 0) return true;
  if (u_segments_ > 1 || !rope_.front().u) return false;
  const Segment& s = rope_.front();
  return sys_->rule_word.count_ones(s.start, s.len) == 0;
}

std::optional<ObjectKind> SymbolEngine::front() const {
  if (spans_.empty()) return std::nullopt;
  return spans_.front().kind;
}

bool SymbolEngine::step() {
  if (length_ < beta_) return false;
  const std::uint8_t sym = head_symbol();
  if (!spans_.empty()) reads_.push_back(sym == kC ? 'c' : 'b');
  drop(beta_);
  if (sym == kC) push_u();
  else push_b(1);
  ++tag_steps_;
  if (!spans_.empty()) {
    head_pos_ += beta_;
    while (!spans_.empty() && head_pos_ >= spans_.front().len) {
      head_pos_ -= spans_.front().len;
      ObjectRecord rec;
      finish_span(rec);
      if (recording_) finished_.push_back(std::move(rec));
    }
  }
  return true;
}

void SymbolEngine::finish_span(ObjectRecord& rec) {
  const Span span = spans_.front();
  spans_.pop_front();
  rec.entry_shift = span_entry_;
  rec.symbols_read = reads_.size();
  rec.exit_shift = head_pos_;
  rec.md = table_.decode(span_entry_);
  if (span.kind) {
    rec.kind = *span.kind;
    if (compiler::is_payload(*span.kind)) --payload_;
  } else {
    rec.untracked = true;
  }
  auto kinds = parse_reads(reads_, sys_->params.x);
  if (kinds) {
    for (ObjectKind k : *kinds) {
      spans_.push_back({k, sys_->params.object_length(k)});
      if (compiler::is_payload(k)) ++payload_;
    }
    rec.appended = std::move(*kinds);
  } else {
    std::uint64_t cs = static_cast<std::uint64_t>(std::count(reads_.begin(), reads_.end(), 'c'));
    std::uint64_t image = (reads_.size() - cs) + cs * sys_->rule_word.size();
    spans_.push_back({std::nullopt, image});
    if (rec.kind == ObjectKind::One && !rec.untracked && sys_->halting_index && rec.md &&
        rec.md->m == *sys_->halting_index)
      rec.halting_block = true;
    else
      rec.untracked = true;
  }
  reads_.clear();
  span_entry_ = head_pos_;
}

ObjectRecord SymbolEngine::consume() {
  if (spans_.empty()) fail(ErrorCode::InvalidArgument, "no tracked object to read");
  bool saved = recording_;
  recording_ = true;
  while (finished_.empty()) {
    if (!step()) {
      recording_ = saved;
      fail(ErrorCode::Divergence, "tag system halted while an object was being read");
    }
  }
  recording_ = saved;
  ObjectRecord r = std::move(finished_.front());
  finished_.pop_front();
  return r;
}

PackedSymbols SymbolEngine::materialize(std::uint64_t limit) const {
  PackedSymbols out(1);
  for (const Segment& s : rope_) {
    if (out.size() >= limit) break;
    std::uint64_t n = std::min(s.len, limit - out.size());
    if (s.u) out.append(sys_->rule_word, s.start, n);
    else out.append_run(kB, n);
  }
  return out;
}

}  // namespace tagpcp::simulator

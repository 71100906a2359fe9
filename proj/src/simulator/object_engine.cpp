#include <algorithm>
#include <sstream>

#include "tagpcp/simulator.hpp"

namespace tagpcp::simulator {

using compiler::Params;

std::string ObjectState::payload() const {
  std::string s;
  for (ObjectKind k : objects) {
    if (k == ObjectKind::One || k == ObjectKind::OnePrime) s.push_back('1');
    if (k == ObjectKind::Zero) s.push_back('0');
  }
  return s;
}

std::uint64_t ObjectState::count(ObjectKind k) const {
  return static_cast<std::uint64_t>(std::count(objects.begin(), objects.end(), k));
}

bool ObjectState::has_payload() const {
  return std::any_of(objects.begin(), objects.end(), compiler::is_payload);
}

ShiftTable::ShiftTable(const Params& params) : set_(compiler::make_shift_set(params)) {}

std::optional<MD> ShiftTable::decode(std::uint64_t z) const {
  if (z >= set_.m_of.size() || set_.m_of[z] < 0) return std::nullopt;
  return MD{static_cast<std::uint32_t>(set_.m_of[z]), static_cast<std::uint32_t>(set_.d_of[z])};
}

std::optional<MD> shift_decode(std::uint64_t z, const Params& params) {
  return ShiftTable(params).decode(z);
}

std::string trace_header() {
  return "step\tkind\tshift\tm\td\tappended\tsymbols_read";
}

std::string trace_line(const ObjectRecord& r) {
  std::ostringstream os;
  os << r.step << "\t" << (r.untracked ? "raw" : compiler::kind_name(r.kind)) << "\t"
     << r.entry_shift << "\t";
  if (r.md) os << r.md->m << "\t" << r.md->d;
  else os << "-\t-";
  os << "\t";
  if (r.halting_block) os << "halt";
  else if (r.appended.empty()) os << "-";
  else os << compiler::kinds_to_string(r.appended);
  os << "\t" << r.symbols_read << "\n";
  return os.str();
}

namespace {

// The u-slot whose scheduled track lies in the last 3x shifts, i.e. the
// slot read only 3x times.
std::uint64_t locate_short_slot(ObjectKind kind, std::uint64_t z, const CompiledSystem& sys) {
  const Params& pr = sys.params;
  const std::uint64_t slots = sys.tmpl(kind).u_slots;
  std::optional<std::uint64_t> found;
  for (std::uint64_t i = 0; i < slots; ++i) {
    std::uint64_t s = compiler::schedule_shift(kind, z, i, pr);
    if (s >= pr.beta - 3 * pr.x) {
      if (found)
        fail(ErrorCode::Divergence, std::string("object ") + compiler::kind_name(kind) +
                                        " at shift " + std::to_string(z) +
                                        " has two short-read slots");
      found = i;
    }
  }
  if (!found)
    fail(ErrorCode::Divergence, std::string("object ") + compiler::kind_name(kind) + " at shift " +
                                    std::to_string(z) + " has no short-read slot");
  return *found;
}

}  // namespace

ObjectRecord object_step(ObjectState& st, const CompiledSystem& sys, const ShiftTable& table) {
  if (st.objects.empty()) fail(ErrorCode::InvalidArgument, "no object to read");
  const Params& pr = sys.params;
  const std::uint64_t x = pr.x, beta = pr.beta, z = st.entry_shift;
  ObjectRecord rec;
  rec.kind = st.objects.front();
  rec.entry_shift = z;
  rec.md = table.decode(z);
  if (!rec.md)
    fail(ErrorCode::InvalidShift, std::string("object ") + compiler::kind_name(rec.kind) +
                                      " entered with unreachable shift " + std::to_string(z));
  const std::uint64_t len = pr.object_length(rec.kind);
  const std::uint64_t s = tagcore::shift_change(len, beta);
  const bool low = s > 0 && z >= beta - s;
  rec.symbols_read = s == 0 ? len / beta : (low ? len / beta : len / beta + 1);
  rec.exit_shift = (z + s) % beta;
  if (!low && z + s >= beta)
    fail(ErrorCode::Divergence, "exit shift wrapped in the upper regime");

  switch (rec.kind) {
    case ObjectKind::Eps:
      rec.appended = {ObjectKind::Eps};
      break;
    case ObjectKind::Zero:
    case ObjectKind::EpsPrime: {
      std::uint64_t n = rec.kind == ObjectKind::Zero ? x + 1 : x;
      rec.appended.assign(n, ObjectKind::Eps);
      if (low) {
        std::uint64_t j = locate_short_slot(rec.kind, z, sys);
        rec.appended.insert(rec.appended.begin() + static_cast<std::ptrdiff_t>(j),
                            ObjectKind::EpsPrime);
        rec.appended.pop_back();
      }
      break;
    }
    case ObjectKind::One: {
      if (sys.halting_index && rec.md->m == *sys.halting_index) {
        rec.halting_block = true;
        break;
      }
      std::optional<std::uint64_t> j;
      if (low) j = locate_short_slot(rec.kind, z, sys);
      rec.appended = compiler::encode_appendant(sys.source[rec.md->m], pr, j);
      break;
    }
    case ObjectKind::OnePrime:
      if (low) fail(ErrorCode::Divergence, "bootstrap object entered in the lower regime");
      rec.appended = compiler::encode_appendant(sys.source[rec.md->m], pr);
      rec.appended.pop_back();
      break;
  }

  st.objects.pop_front();
  st.objects.insert(st.objects.end(), rec.appended.begin(), rec.appended.end());
  st.entry_shift = rec.exit_shift;
  st.steps_elapsed += rec.symbols_read;
  return rec;
}

ObjectEngine::ObjectEngine(const CompiledSystem& sys, ObjectState initial)
    : sys_(&sys), table_(sys.params), st_(std::move(initial)) {
  payload_ = static_cast<std::uint64_t>(
      std::count_if(st_.objects.begin(), st_.objects.end(), compiler::is_payload));
}

ObjectEngine ObjectEngine::for_input(const CompiledSystem& sys, std::string_view w) {
  cyclic::check_binary(w, "input word");
  ObjectState st;
  for (char ch : w) st.objects.push_back(ch == '1' ? ObjectKind::One : ObjectKind::Zero);
  return ObjectEngine(sys, std::move(st));
}

ObjectEngine ObjectEngine::pcp_ready(const CompiledSystem& sys) {
  if (sys.variant != compiler::Variant::PcpReady)
    fail(ErrorCode::InvalidArgument, "not a PCP-ready system");
  ObjectState st;
  st.objects.push_back(ObjectKind::OnePrime);
  st.entry_shift = 3 * sys.params.x;
  return ObjectEngine(sys, std::move(st));
}

ObjectRecord ObjectEngine::consume() {
  if (stopped_) fail(ErrorCode::InvalidArgument, "object engine stopped after a halting block");
  ObjectRecord r = object_step(st_, *sys_, table_);
  if (compiler::is_payload(r.kind)) --payload_;
  payload_ += static_cast<std::uint64_t>(
      std::count_if(r.appended.begin(), r.appended.end(), compiler::is_payload));
  if (r.halting_block) stopped_ = true;
  return r;
}

}  // namespace tagpcp::simulator

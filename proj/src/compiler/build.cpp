#include <algorithm>
#include <sstream>

#include "tagpcp/compiler.hpp"
#include "tagpcp/text.hpp"

namespace tagpcp::compiler {

const char* role_name(RowRole r) {
  switch (r) {
    case RowRole::Standard: return "standard";
    case RowRole::Halting: return "halting";
    case RowRole::OddFill: return "odd-fill";
    case RowRole::Bootstrap: return "bootstrap";
    case RowRole::Corrupted: return "corrupted";
  }
  return "?";
}

std::string Provenance::describe() const {
  std::ostringstream os;
  os << kind_name(kind) << " z=" << entry_shift << " m=" << m << " d=" << d << " slot=" << slot
     << " " << (short_read ? "short" : "long") << " " << role_name(role);
  return os.str();
}

Provenance Provenance::parse(std::string_view s) {
  auto tok = text::split_ws(s);
  if (tok.size() != 7) fail(ErrorCode::Parse, "provenance needs 7 fields: '" + std::string(s) + "'");
  Provenance p;
  auto k = kind_from_name(tok[0]);
  if (!k) fail(ErrorCode::Parse, "unknown object kind '" + std::string(tok[0]) + "'");
  p.kind = *k;
  auto field = [&](std::string_view t, std::string_view key) -> std::string_view {
    if (t.substr(0, key.size()) != key) fail(ErrorCode::Parse, "expected field " + std::string(key));
    return t.substr(key.size());
  };
  p.entry_shift = text::parse_u64(field(tok[1], "z="), 0, 0);
  p.m = static_cast<std::uint32_t>(text::parse_u64(field(tok[2], "m="), 0, 0));
  p.d = static_cast<std::uint32_t>(text::parse_u64(field(tok[3], "d="), 0, 0));
  std::string_view sl = field(tok[4], "slot=");
  p.slot = sl == "-1" ? -1 : static_cast<std::int32_t>(text::parse_u64(sl, 0, 0));
  if (tok[5] != "short" && tok[5] != "long") fail(ErrorCode::Parse, "expected short/long");
  p.short_read = tok[5] == "short";
  bool found = false;
  for (RowRole r : {RowRole::Standard, RowRole::Halting, RowRole::OddFill, RowRole::Bootstrap,
                    RowRole::Corrupted})
    if (tok[6] == role_name(r)) p.role = r, found = true;
  if (!found) fail(ErrorCode::Parse, "unknown row role '" + std::string(tok[6]) + "'");
  return p;
}

std::string Conflict::describe() const {
  return "shift " + std::to_string(shift) + ": '" + first.content + "' from [" +
         first.provenance.describe() + "] vs '" + second.content + "' from [" +
         second.provenance.describe() + "]";
}

TrackLedger::TrackLedger(std::uint64_t beta) : beta_(beta), index_(beta, -1) {}

bool TrackLedger::assign(std::uint64_t shift, std::string content, const Provenance& prov) {
  if (shift >= beta_) fail(ErrorCode::OutOfRange, "track shift " + std::to_string(shift) + " >= beta");
  ++writes_;
  std::int32_t& idx = index_[shift];
  if (idx < 0) {
    idx = static_cast<std::int32_t>(entries_.size());
    entries_.push_back({std::move(content), prov});
    return true;
  }
  if (entries_[idx].content == content) return true;
  conflicts_.push_back({shift, entries_[idx], {std::move(content), prov}});
  return false;
}

void TrackLedger::overwrite(std::uint64_t shift, std::string content, const Provenance& prov) {
  if (shift >= beta_) fail(ErrorCode::OutOfRange, "track shift " + std::to_string(shift) + " >= beta");
  std::int32_t& idx = index_[shift];
  if (idx < 0) {
    idx = static_cast<std::int32_t>(entries_.size());
    entries_.push_back({std::move(content), prov});
  } else {
    entries_[idx] = {std::move(content), prov};
  }
}

const TrackEntry* TrackLedger::find(std::uint64_t shift) const {
  if (shift >= beta_ || index_[shift] < 0) return nullptr;
  return &entries_[index_[shift]];
}

std::vector<std::uint64_t> TrackLedger::shifts() const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = 0; s < beta_; ++s)
    if (index_[s] >= 0) out.push_back(s);
  return out;
}

Walk walk_object(const ObjectTemplate& t, std::uint64_t z, const Params& params) {
  const std::uint64_t beta = params.beta;
  if (z >= beta) fail(ErrorCode::InvalidShift, "entry shift >= beta");
  Walk w;
  std::uint64_t pos = z, o = 0;
  std::int32_t slot = 0;
  for (const auto& run : t.skeleton) {
    if (!run.u) {
      std::uint64_t end = o + run.count;
      if (pos < end) {
        std::uint64_t n = (end - pos + beta - 1) / beta;
        w.items.push_back({-1, 0, n});
        w.b_reads += n;
        w.reads += n;
        pos += n * beta;
      }
      o = end;
      continue;
    }
    for (std::uint64_t c = 0; c < run.count; ++c, ++slot) {
      std::uint64_t end = o + params.u_length;
      if (pos < end) {
        std::uint64_t ts = pos - o;
        if (ts >= beta) fail(ErrorCode::OutOfRange, "u-slot entered past a full track period");
        std::uint64_t n = (end - pos + beta - 1) / beta;
        w.items.push_back({slot, ts, n});
        if (n == 3 * params.x) w.short_slots.push_back(slot);
        w.reads += n;
        pos += n * beta;
      } else {
        w.items.push_back({slot, 0, 0});
      }
      o = end;
    }
  }
  w.exit_shift = pos - o;
  return w;
}

namespace {

bool is_short(const Walk& w) { return w.b_reads == 0 && w.short_slots.size() == 1; }

std::uint64_t regime_limit(ObjectKind kind, const Params& params) {
  switch (kind) {
    case ObjectKind::One:
    case ObjectKind::Zero: return params.beta - params.z1;
    case ObjectKind::EpsPrime:
    case ObjectKind::OnePrime: return params.beta - params.z2;
    case ObjectKind::Eps: return params.beta;
  }
  return params.beta;
}

std::string concat_patterns(const std::vector<ObjectKind>& ks, std::uint64_t x) {
  std::string r;
  for (ObjectKind k : ks) r += read_pattern(k, x);
  return r;
}

}  // namespace

std::vector<ObjectKind> target_objects(ObjectKind kind, std::uint64_t z, const Walk& walk,
                                       const Params& params, const ShiftSet& shifts,
                                       const cyclic::Program& source) {
  const std::uint64_t x = params.x;
  const bool shrt = is_short(walk);
  if (kind != ObjectKind::Eps && shrt != (z >= regime_limit(kind, params)))
    fail(ErrorCode::OutOfRange, std::string("object ") + kind_name(kind) + " entered with shift " +
                                    std::to_string(z) + " reads outside its stated regime");
  std::optional<std::uint64_t> j;
  if (shrt) j = static_cast<std::uint64_t>(walk.short_slots[0]);
  std::vector<ObjectKind> out;
  switch (kind) {
    case ObjectKind::Eps:
      out.push_back(ObjectKind::Eps);
      break;
    case ObjectKind::EpsPrime:
    case ObjectKind::Zero: {
      std::uint64_t n = kind == ObjectKind::Zero ? x + 1 : x;
      out.assign(n, ObjectKind::Eps);
      if (j) {
        out.insert(out.begin() + static_cast<std::ptrdiff_t>(*j), ObjectKind::EpsPrime);
        out.pop_back();
      }
      break;
    }
    case ObjectKind::One:
    case ObjectKind::OnePrime: {
      if (z >= shifts.m_of.size() || shifts.m_of[z] < 0)
        fail(ErrorCode::InvalidShift, "shift " + std::to_string(z) + " is not in the shift set");
      out = encode_appendant(source[static_cast<std::size_t>(shifts.m_of[z])], params, j);
      if (kind == ObjectKind::OnePrime) {
        if (j) fail(ErrorCode::OutOfRange, "bootstrap object read in the short regime");
        out.pop_back();
      }
      break;
    }
  }
  return out;
}

PackedSymbols materialize_u(const TrackLedger& ledger, std::uint64_t length) {
  const std::uint64_t beta = ledger.beta();
  std::vector<const std::string*> track(beta, nullptr);
  for (std::uint64_t s : ledger.shifts()) track[s] = &ledger.find(s)->content;
  PackedSymbols u(1);
  u.reserve(length);
  std::uint64_t i = 0;
  for (std::uint64_t row = 0; i < length; ++row) {
    for (std::uint64_t s = 0; s < beta && i < length; ++s, ++i) {
      const std::string* t = track[s];
      if (t && row >= t->size())
        fail(ErrorCode::OutOfRange, "track " + std::to_string(s) + " content shorter than the track");
      u.push_back(t && (*t)[row] == 'c' ? kC : kB);
    }
  }
  for (std::uint64_t s = 0; s < beta; ++s) {
    const std::string* t = track[s];
    std::uint64_t expect = s < length ? (length - s + beta - 1) / beta : 0;
    if (t && t->size() != expect)
      fail(ErrorCode::OutOfRange, "track " + std::to_string(s) + " content has length " +
                                      std::to_string(t->size()) + ", track holds " +
                                      std::to_string(expect));
  }
  return u;
}

BuildResult build_u(const cyclic::Program& source, const Params& params,
                    const BuildOptions& options) {
  if (source.size() != params.program_length)
    fail(ErrorCode::InvalidArgument, "source program must have 3x-2 appendants");
  if (source.max_length() > params.r)
    fail(ErrorCode::InvalidArgument, "source program has an appendant longer than r");
  if (options.halting_index && *options.halting_index >= params.program_length)
    fail(ErrorCode::InvalidArgument, "halting index must be below 3x-2");
  const std::uint64_t x = params.x;
  const ShiftSet shifts = make_shift_set(params);
  BuildResult res;
  res.ledger = TrackLedger(params.beta);

  for (ObjectKind kind : {ObjectKind::Eps, ObjectKind::Zero, ObjectKind::EpsPrime, ObjectKind::One}) {
    const ObjectTemplate t = make_template(kind, params);
    for (std::uint64_t row = 0; row < shifts.shifts.size(); ++row) {
      const std::uint64_t z = shifts.shifts[row];
      const Walk w = walk_object(t, z, params);
      Provenance prov;
      prov.kind = kind;
      prov.entry_shift = z;
      prov.m = static_cast<std::uint32_t>(shifts.m_of[z]);
      prov.d = static_cast<std::uint32_t>(shifts.d_of[z]);
      prov.short_read = is_short(w);

      std::string reads;
      if (kind == ObjectKind::One && options.halting_index &&
          prov.m == *options.halting_index) {
        // Same reads as an empty appendant, but the first appended object is
        // replaced by a block whose image has odd length.
        cyclic::Program empty(std::vector<std::string>(source.size()));
        auto ks = target_objects(kind, z, w, params, shifts, empty);
        reads = concat_patterns(ks, x);
        std::uint64_t first = read_pattern(ks[0], x).size();
        std::string block = first == 3 * x + 1 ? std::string(3 * x + 1, 'b')
                                               : std::string(3 * x - 1, 'b') + "c";
        reads.replace(0, first, block);
        prov.role = RowRole::Halting;
      } else {
        reads = concat_patterns(target_objects(kind, z, w, params, shifts, source), x);
      }
      bool corrupt = options.corrupt && options.corrupt->kind == kind && options.corrupt->row == row;
      if (reads.size() != w.reads)
        fail(ErrorCode::OutOfRange, "read count mismatch for [" + prov.describe() + "]");

      std::uint64_t k = 0;
      bool corrupted = false;
      for (const WalkItem& it : w.items) {
        if (it.slot < 0) {
          for (std::uint64_t n = 0; n < it.count; ++n, ++k)
            if (reads[k] != 'b')
              fail(ErrorCode::OutOfRange, "b-run read needs symbol b for [" + prov.describe() + "]");
          continue;
        }
        if (it.count == 0) continue;
        std::string content = reads.substr(k, it.count);
        k += it.count;
        Provenance p = prov;
        p.slot = it.slot;
        if (corrupt && !corrupted) {
          content.back() = content.back() == 'b' ? 'c' : 'b';
          p.role = RowRole::Corrupted;
          corrupted = true;
        }
        res.ledger.assign(it.track_shift, std::move(content), p);
      }
      ++res.rows;
    }
  }

  if (options.halting_index) {
    for (std::uint64_t s = 1; s < params.beta; s += 2) {
      Provenance p;
      p.role = RowRole::OddFill;
      p.entry_shift = s;
      std::uint64_t len = s < params.beta - 3 * x ? 3 * x + 1 : 3 * x;
      res.ledger.assign(s, std::string(len, 'b'), p);
    }
  }

  if (options.throw_on_conflict && !res.ledger.conflicts().empty())
    fail(ErrorCode::TrackConflict, res.ledger.conflicts().front().describe() + " (" +
                                       std::to_string(res.ledger.conflicts().size()) +
                                       " conflicts)");
  res.u = materialize_u(res.ledger, params.u_length);
  return res;
}

PackedSymbols expand_object(const ObjectTemplate& t, const PackedSymbols& u) {
  PackedSymbols out(1);
  for (const auto& run : t.skeleton) {
    if (!run.u) {
      out.append_run(kB, run.count);
    } else {
      for (std::uint64_t i = 0; i < run.count; ++i) out.append(u);
    }
  }
  return out;
}

tagcore::TagSystem CompiledSystem::tag_system() const {
  return tagcore::TagSystem::from_rules(params.beta,
                                        {{'b', "b"}, {'c', rule_word.to_string(kGlyphs)}});
}

tagcore::Dataword encode_dataword(const CompiledSystem& sys, std::string_view w,
                                  std::uint64_t entry_shift) {
  if (w.empty()) fail(ErrorCode::InvalidArgument, "cannot encode an empty word");
  cyclic::check_binary(w, "input word");
  if (entry_shift >= sys.params.beta) fail(ErrorCode::InvalidShift, "entry shift >= beta");
  const PackedSymbols one = expand_object(sys.tmpl(ObjectKind::One), sys.u);
  const PackedSymbols zero = expand_object(sys.tmpl(ObjectKind::Zero), sys.u);
  PackedSymbols out(1);
  out.reserve(w.size() * one.size());
  for (char ch : w) out.append(ch == '1' ? one : zero);
  out.drop_front(entry_shift);
  tagcore::Dataword d(std::move(out));
  d.set_entry_shift(entry_shift, sys.params.beta);
  return d;
}

namespace {

void fill_templates(CompiledSystem& sys) {
  for (ObjectKind k : kAllKinds) sys.templates[static_cast<std::size_t>(k)] = make_template(k, sys.params);
}

cyclic::Program rotate_last_to_front(const cyclic::Program& p) {
  std::vector<std::string> a = p.appendants();
  std::rotate(a.rbegin(), a.rbegin() + 1, a.rend());
  return cyclic::Program(std::move(a));
}

void finish_pcp_ready(CompiledSystem& sys, TrackLedger ledger) {
  const Params& pr = sys.params;
  const std::uint64_t x = pr.x, beta = pr.beta;
  if (ledger.find(0))
    fail(ErrorCode::TrackConflict, "track 0 already assigned by [" +
                                       ledger.find(0)->provenance.describe() + "]");
  Provenance boot;
  boot.kind = ObjectKind::OnePrime;
  boot.entry_shift = 3 * x;
  boot.m = 1;
  boot.d = static_cast<std::uint32_t>(3 * x);
  boot.role = RowRole::Bootstrap;
  ledger.assign(0, "b" + read_pattern(ObjectKind::OnePrime, x), boot);
  sys.u = materialize_u(ledger, pr.u_length);

  sys.rule_word = PackedSymbols(1);
  sys.rule_word.append(sys.u, 1, sys.u.size() - 1);
  sys.rule_word.push_back(kB);

  TrackLedger shifted(beta);
  for (std::uint64_t s : ledger.shifts()) {
    const TrackEntry* e = ledger.find(s);
    std::uint64_t s2 = (s + beta - 1) % beta;
    std::string c = s == 0 ? e->content.substr(1) : e->content;
    if (s2 == beta - 3 * x - 1) c += 'b';
    shifted.assign(s2, std::move(c), e->provenance);
  }
  sys.ledger = std::move(shifted);
}

}  // namespace

cyclic::Program pcp_ready_program(const cyclic::Program& base, std::string_view w) {
  cyclic::Program cw = cyclic::build_cw(base, w);
  std::vector<std::string> a = cw.appendants();
  a[0] = "0" + a[0];
  cyclic::Program q(std::move(a));
  switch (q.size() % 3) {
    case 2: return q;
    case 1: return cyclic::replicate_program(q, 2);
    default:
      fail(ErrorCode::UnsupportedArity,
           "single-1-input program has " + std::to_string(q.size()) +
               " appendants, a multiple of 3, so no replication reaches 2 mod 3");
  }
}

CompiledSystem compile(const cyclic::Program& program, const CompileOptions& options) {
  CompiledSystem sys;
  sys.base = program;
  sys.halting_index = options.halting_index;
  if (options.pcp_input) {
    sys.variant = Variant::PcpReady;
    sys.pcp_input = *options.pcp_input;
    cyclic::Program q = pcp_ready_program(program, *options.pcp_input);
    sys.params = select_params(q, options.x);
    sys.source = rotate_last_to_front(cyclic::replicate_program(q, sys.params.q));
  } else {
    sys.params = select_params(program, options.x);
    sys.source = cyclic::replicate_program(program, sys.params.q);
  }
  fill_templates(sys);
  BuildOptions bo;
  bo.halting_index = options.halting_index;
  BuildResult br = build_u(sys.source, sys.params, bo);
  sys.rows = br.rows;
  if (sys.variant == Variant::PcpReady) {
    finish_pcp_ready(sys, std::move(br.ledger));
  } else {
    sys.u = std::move(br.u);
    sys.rule_word = sys.u;
    sys.ledger = std::move(br.ledger);
  }
  return sys;
}

CompiledSystem apply_halting_variant(const CompiledSystem& sys, std::uint64_t halting_index) {
  if (halting_index >= sys.params.program_length)
    fail(ErrorCode::InvalidArgument, "halting index must be below 3x-2");
  CompileOptions o;
  o.x = sys.params.x;
  o.halting_index = halting_index;
  o.pcp_input = sys.pcp_input;
  return compile(sys.base, o);
}

CompiledSystem build_pcp_ready(const CompiledSystem& sys, std::string_view w) {
  if (sys.variant != Variant::Standard)
    fail(ErrorCode::InvalidArgument, "PCP-ready variant needs a standard compiled system");
  cyclic::Program q = pcp_ready_program(sys.base, w);
  CompileOptions o;
  o.x = select_params(q, std::nullopt, sys.params.x).x;
  o.halting_index = sys.halting_index;
  o.pcp_input = std::string(w);
  return compile(sys.base, o);
}

cyclic::Config pcp_ready_start(const CompiledSystem& sys) {
  if (sys.variant != Variant::PcpReady) fail(ErrorCode::InvalidArgument, "not a PCP-ready system");
  return cyclic::Config{sys.source, 1, "1"};
}

PackedSymbols pcp_ready_input(const CompiledSystem& sys) {
  if (sys.variant != Variant::PcpReady) fail(ErrorCode::InvalidArgument, "not a PCP-ready system");
  PackedSymbols in(1);
  const std::uint64_t from = sys.params.beta - 1;
  in.append(sys.rule_word, from, sys.rule_word.size() - from);
  return in;
}

}  // namespace tagpcp::compiler

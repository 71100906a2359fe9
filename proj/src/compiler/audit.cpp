#include <unordered_map>

#include "tagpcp/compiler.hpp"

namespace tagpcp::compiler {

TrackAudit audit_tracks(const CompiledSystem& sys) {
  TrackAudit rep;
  const std::uint64_t beta = sys.params.beta, x = sys.params.x;
  const PackedSymbols& w = sys.rule_word;
  rep.conflicts = sys.ledger.conflicts().size();
  for (std::uint64_t s : sys.ledger.shifts()) {
    ++rep.assigned;
    const std::string& c = sys.ledger.find(s)->content;
    std::uint64_t expect = s < beta - 3 * x ? 3 * x + 1 : 3 * x;
    if (sys.variant == Variant::PcpReady && s == beta - 3 * x - 1) expect = 3 * x + 1;
    if (c.size() != expect) ++rep.length_mismatches;
    bool ok = true;
    std::uint64_t i = 0;
    for (std::uint64_t pos = s; pos < w.size(); pos += beta, ++i)
      if (i >= c.size() || (w[pos] == kC) != (c[i] == 'c')) ok = false;
    if (i != c.size()) ok = false;
    if (!ok) ++rep.track_mismatches;
  }
  return rep;
}

ReaderAudit audit_readers(const CompiledSystem& sys) {
  const Params& pr = sys.params;
  const std::uint64_t x = pr.x, beta = pr.beta;
  const ShiftSet ss = make_shift_set(pr);
  // Every (kind, z, slot) read, keyed by the track shift it reads.
  struct Reader {
    ObjectKind kind;
    std::uint64_t z;
    std::int32_t slot;
  };
  std::unordered_map<std::uint64_t, std::vector<Reader>> readers;
  for (ObjectKind kind : {ObjectKind::Eps, ObjectKind::Zero, ObjectKind::EpsPrime, ObjectKind::One}) {
    ObjectTemplate t = make_template(kind, pr);
    for (std::uint64_t z : ss.shifts) {
      Walk w = walk_object(t, z, pr);
      for (const WalkItem& it : w.items)
        if (it.slot >= 0 && it.count > 0) readers[it.track_shift].push_back({kind, z, it.slot});
    }
  }
  ReaderAudit rep;
  for (std::uint64_t k = 0; k < x / 2 - 7; ++k) {
    for (std::uint64_t z : ss.shifts) {
      ++rep.checked;
      std::uint64_t s = (z + k * (3 * x - 2) + beta - 10) % beta;
      bool ok = true;
      for (const Reader& r : readers[s])
        if (r.kind != ObjectKind::One || r.z != z || r.slot != static_cast<std::int32_t>(k)) ok = false;
      std::uint64_t ls = sys.variant == Variant::PcpReady ? (s + beta - 1) % beta : s;
      const TrackEntry* e = sys.ledger.find(ls);
      if (!e || e->provenance.kind != ObjectKind::One || e->provenance.entry_shift != z ||
          e->provenance.slot != static_cast<std::int32_t>(k))
        ok = false;
      if (!ok) ++rep.violations;
    }
  }
  return rep;
}

ShiftAudit audit_shifts(const Params& params) {
  ShiftSet ss = make_shift_set(params);
  return {ss.shifts.size(), ss.cross_m_collisions};
}

ScheduleReport audit_schedule(const Params& params) {
  ScheduleReport rep;
  const ShiftSet ss = make_shift_set(params);
  for (ObjectKind kind : kAllKinds) {
    ObjectTemplate t = make_template(kind, params);
    std::uint64_t limit = params.beta;
    if (kind == ObjectKind::One || kind == ObjectKind::Zero) limit -= params.z1;
    if (kind == ObjectKind::EpsPrime || kind == ObjectKind::OnePrime) limit -= params.z2;
    for (std::uint64_t z : ss.shifts) {
      Walk w = walk_object(t, z, params);
      for (const WalkItem& it : w.items) {
        if (it.slot < 0) continue;
        ++rep.slots_checked;
        if (it.count == 0 ||
            it.track_shift != schedule_shift(kind, z, static_cast<std::uint64_t>(it.slot), params))
          ++rep.mismatches;
      }
      bool shrt = w.b_reads == 0 && w.short_slots.size() == 1;
      if (kind != ObjectKind::Eps && shrt != (z >= limit)) ++rep.regime_mismatches;
    }
  }
  return rep;
}

}  // namespace tagpcp::compiler

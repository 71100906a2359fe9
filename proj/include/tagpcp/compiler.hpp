#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tagpcp/cyclic.hpp"
#include "tagpcp/packed.hpp"
#include "tagpcp/tagcore.hpp"

namespace tagpcp::compiler {

// Symbol encoding of the compiled binary tag system.
inline constexpr std::uint8_t kB = 0;
inline constexpr std::uint8_t kC = 1;
inline const std::string kGlyphs = "bc";

enum class ObjectKind : std::uint8_t { One, Zero, Eps, EpsPrime, OnePrime };
inline constexpr std::array<ObjectKind, 5> kAllKinds = {
    ObjectKind::One, ObjectKind::Zero, ObjectKind::Eps, ObjectKind::EpsPrime,
    ObjectKind::OnePrime};

const char* kind_name(ObjectKind k);
std::optional<ObjectKind> kind_from_name(std::string_view s);
inline bool is_payload(ObjectKind k) {
  return k == ObjectKind::One || k == ObjectKind::Zero || k == ObjectKind::OnePrime;
}
std::string kinds_to_string(const std::vector<ObjectKind>& ks);

struct Params {
  std::uint64_t p = 0;  // arity of the program being replicated
  std::uint64_t k = 0;  // p = 3k + 2
  std::uint64_t q = 0;  // replication count
  std::uint64_t x = 0;
  std::uint64_t program_length = 0;  // 3x - 2
  std::uint64_t z1 = 0;
  std::uint64_t z2 = 0;
  std::uint64_t beta = 0;
  std::uint64_t r = 0;  // longest appendant
  std::uint64_t u_length = 0;

  // Fills the derived quantities and validates every constraint.
  static Params at(std::uint64_t p, std::uint64_t x, std::uint64_t r);
  void validate() const;
  std::uint64_t object_length(ObjectKind k) const;
  std::uint64_t object_shift_change(ObjectKind k) const;
  bool operator==(const Params&) const = default;
};

// Minimal feasible x (at least min_x), or exactly x_override.
Params select_params(std::uint64_t p, std::uint64_t r,
                     std::optional<std::uint64_t> x_override = std::nullopt,
                     std::uint64_t min_x = 0);
Params select_params(const cyclic::Program& c,
                     std::optional<std::uint64_t> x_override = std::nullopt,
                     std::uint64_t min_x = 0);

// b-runs and runs of consecutive u-slots.
struct SkeletonRun {
  bool u = false;
  std::uint64_t count = 0;
};

struct ObjectTemplate {
  ObjectKind kind = ObjectKind::Eps;
  std::vector<SkeletonRun> skeleton;
  std::uint64_t u_slots = 0;
  std::uint64_t b_count = 0;
  std::uint64_t expanded_length = 0;

  std::string skeleton_text() const;  // over {b, U}
};

ObjectTemplate make_template(ObjectKind kind, const Params& params);

enum class PatternForm { Full, DropLeadingB, DropTrailingB };
// Read sequence over {b,c} whose image under b->b, c->u is the object.
std::string read_pattern(ObjectKind kind, std::uint64_t x, PatternForm form = PatternForm::Full);

// Closed-form track shift read in u-slot `slot` of an object entered with
// shift z.
std::uint64_t schedule_shift(ObjectKind kind, std::uint64_t z, std::uint64_t slot,
                             const Params& params);

std::vector<ObjectKind> encode_appendant(std::string_view alpha, const Params& params,
                                         std::optional<std::uint64_t> prime_at = std::nullopt);

// Shift set: z = (z1 m + z2 d) mod beta for m < 3x-2, d < 3x+1.
struct ShiftSet {
  std::vector<std::int32_t> m_of;  // -1 when unreachable
  std::vector<std::int32_t> d_of;  // smallest witness d
  std::vector<std::uint64_t> shifts;  // sorted reachable shifts
  std::uint64_t cross_m_collisions = 0;
  std::uint64_t pairs = 0;
};
ShiftSet make_shift_set(const Params& params);

// One read event of an object walk: either a b-run read (slot < 0) or the
// reads of one u-slot.
struct WalkItem {
  std::int32_t slot = -1;
  std::uint64_t track_shift = 0;
  std::uint64_t count = 0;
};

struct Walk {
  std::vector<WalkItem> items;
  std::uint64_t reads = 0;
  std::uint64_t exit_shift = 0;
  std::uint64_t b_reads = 0;
  std::vector<std::int32_t> short_slots;  // slots read 3x times
};

Walk walk_object(const ObjectTemplate& t, std::uint64_t z, const Params& params);

enum class RowRole : std::uint8_t { Standard, Halting, OddFill, Bootstrap, Corrupted };
const char* role_name(RowRole r);

struct Provenance {
  ObjectKind kind = ObjectKind::Eps;
  std::uint64_t entry_shift = 0;
  std::uint32_t m = 0;
  std::uint32_t d = 0;
  std::int32_t slot = -1;
  bool short_read = false;
  RowRole role = RowRole::Standard;

  std::string describe() const;
  static Provenance parse(std::string_view s);
};

struct TrackEntry {
  std::string content;
  Provenance provenance;
};

struct Conflict {
  std::uint64_t shift = 0;
  TrackEntry first;
  TrackEntry second;
  std::string describe() const;
};

class TrackLedger {
 public:
  TrackLedger() = default;
  explicit TrackLedger(std::uint64_t beta);

  std::uint64_t beta() const { return beta_; }
  // Records a conflict and keeps the first content when contents differ.
  bool assign(std::uint64_t shift, std::string content, const Provenance& prov);
  void overwrite(std::uint64_t shift, std::string content, const Provenance& prov);
  const TrackEntry* find(std::uint64_t shift) const;
  std::vector<std::uint64_t> shifts() const;
  std::size_t assigned_count() const { return entries_.size(); }
  std::uint64_t writes() const { return writes_; }
  const std::vector<Conflict>& conflicts() const { return conflicts_; }

 private:
  std::uint64_t beta_ = 0;
  std::vector<std::int32_t> index_;
  std::vector<TrackEntry> entries_;
  std::vector<Conflict> conflicts_;
  std::uint64_t writes_ = 0;
};

struct Corruption {
  ObjectKind kind = ObjectKind::Zero;
  std::uint64_t row = 0;  // index into the enumerated entry shifts
};

struct BuildOptions {
  std::optional<std::uint64_t> halting_index;
  std::optional<Corruption> corrupt;
  bool throw_on_conflict = true;
};

struct BuildResult {
  PackedSymbols u{1};
  TrackLedger ledger;
  std::uint64_t rows = 0;
};

// Enumerates every (object kind, entry shift) row, derives the read
// pattern of each u-slot and materializes u with all-b default tracks.
BuildResult build_u(const cyclic::Program& source, const Params& params,
                    const BuildOptions& options = {});

// Object kinds appended when `kind` is read with entry shift z.
std::vector<ObjectKind> target_objects(ObjectKind kind, std::uint64_t z, const Walk& walk,
                                       const Params& params, const ShiftSet& shifts,
                                       const cyclic::Program& source);

PackedSymbols materialize_u(const TrackLedger& ledger, std::uint64_t length);

enum class Variant { Standard, PcpReady };

struct CompiledSystem {
  Params params;
  cyclic::Program base;    // program supplied by the user
  cyclic::Program source;  // replicated (and for PcpReady rotated) program
  Variant variant = Variant::Standard;
  std::optional<std::uint64_t> halting_index;
  std::optional<std::string> pcp_input;
  PackedSymbols u{1};          // u of the standard construction
  PackedSymbols rule_word{1};  // appendant of c: u, or u' for PcpReady
  TrackLedger ledger;          // tracks of rule_word
  std::array<ObjectTemplate, 5> templates;
  std::uint64_t rows = 0;

  const ObjectTemplate& tmpl(ObjectKind k) const {
    return templates[static_cast<std::size_t>(k)];
  }
  tagcore::TagSystem tag_system() const;
};

struct CompileOptions {
  std::optional<std::uint64_t> x;
  std::optional<std::uint64_t> halting_index;
  std::optional<std::string> pcp_input;
};

CompiledSystem compile(const cyclic::Program& program, const CompileOptions& options = {});
CompiledSystem apply_halting_variant(const CompiledSystem& sys, std::uint64_t halting_index);
CompiledSystem build_pcp_ready(const CompiledSystem& sys, std::string_view w);

// Program compiled for the PCP-ready variant of input w and the cyclic
// configuration the bootstrap object stands for.
cyclic::Program pcp_ready_program(const cyclic::Program& base, std::string_view w);
cyclic::Config pcp_ready_start(const CompiledSystem& sys);

// Word u_beta ... u_l b that starts the PcpReady computation.
PackedSymbols pcp_ready_input(const CompiledSystem& sys);

// Object word obtained by substituting u into the skeleton.
PackedSymbols expand_object(const ObjectTemplate& t, const PackedSymbols& u);
tagcore::Dataword encode_dataword(const CompiledSystem& sys, std::string_view w,
                                  std::uint64_t entry_shift = 0);

// Audits
struct TrackAudit {
  std::uint64_t conflicts = 0;
  std::uint64_t assigned = 0;
  std::uint64_t track_mismatches = 0;
  std::uint64_t length_mismatches = 0;
};
TrackAudit audit_tracks(const CompiledSystem& sys);

struct ReaderAudit {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
};
ReaderAudit audit_readers(const CompiledSystem& sys);

struct ShiftAudit {
  std::uint64_t shifts = 0;
  std::uint64_t cross_m_collisions = 0;
};
ShiftAudit audit_shifts(const Params& params);

struct ScheduleReport {
  std::uint64_t slots_checked = 0;
  std::uint64_t mismatches = 0;
  std::uint64_t regime_mismatches = 0;
};
// Positional walk against the closed-form schedule, and regime detection
// against z >= beta - shift_change.
ScheduleReport audit_schedule(const Params& params);

// Compiled-system file
std::string serialize(const CompiledSystem& sys);
CompiledSystem deserialize(std::string_view text);
std::string rle_encode(const PackedSymbols& w);
PackedSymbols rle_decode(std::string_view s);

}  // namespace tagpcp::compiler

#include "tagpcp/simulator.hpp"

namespace tagpcp::simulator {

using compiler::ObjectTemplate;

namespace {

class PackedCursor {
 public:
  PackedCursor(const PackedSymbols& w, const PackedSymbols& u) : w_(&w), u_(&u) {}
  bool at_end() const { return pos_ == w_->size(); }
  std::uint64_t offset() const { return pos_; }
  bool b_run(std::uint64_t n) {
    if (pos_ + n > w_->size() || !w_->all_zero(pos_, n)) return false;
    pos_ += n;
    return true;
  }
  bool u_slot(std::uint64_t skip) {
    std::uint64_t n = u_->size() - skip;
    if (pos_ + n > w_->size() || !w_->range_equals(pos_, *u_, skip, n)) return false;
    pos_ += n;
    return true;
  }

 private:
  const PackedSymbols* w_;
  const PackedSymbols* u_;
  std::uint64_t pos_ = 0;
};

class RopeCursor {
 public:
  RopeCursor(const std::deque<SymbolEngine::Segment>& rope, std::uint64_t ulen)
      : rope_(&rope), ulen_(ulen) {}
  bool at_end() const { return i_ == rope_->size(); }
  std::uint64_t offset() const { return consumed_; }
  bool b_run(std::uint64_t n) {
    while (n > 0) {
      if (i_ >= rope_->size() || (*rope_)[i_].u) return false;
      const auto& s = (*rope_)[i_];
      std::uint64_t take = std::min(n, s.len - off_);
      off_ += take;
      n -= take;
      consumed_ += take;
      if (off_ == s.len) ++i_, off_ = 0;
    }
    return true;
  }
  bool u_slot(std::uint64_t skip) {
    if (i_ >= rope_->size() || off_ != 0) return false;
    const auto& s = (*rope_)[i_];
    if (!s.u || s.start != skip || s.start + s.len != ulen_) return false;
    ++i_;
    consumed_ += s.len;
    return true;
  }

 private:
  const std::deque<SymbolEngine::Segment>* rope_;
  std::uint64_t ulen_;
  std::size_t i_ = 0;
  std::uint64_t off_ = 0;
  std::uint64_t consumed_ = 0;
};

template <class Cursor>
bool parse_object(Cursor& c, const ObjectTemplate& t, std::uint64_t skip, std::uint64_t ulen) {
  for (const auto& run : t.skeleton) {
    if (!run.u) {
      if (skip >= run.count) {
        skip -= run.count;
        continue;
      }
      std::uint64_t n = run.count - skip;
      skip = 0;
      if (!c.b_run(n)) return false;
      continue;
    }
    for (std::uint64_t i = 0; i < run.count; ++i) {
      if (skip >= ulen) {
        skip -= ulen;
        continue;
      }
      if (!c.u_slot(skip)) return false;
      skip = 0;
    }
  }
  return true;
}

template <class Cursor>
DecodeResult decode_with(Cursor c, const CompiledSystem& sys, std::uint64_t z) {
  DecodeResult res;
  res.state.entry_shift = z;
  const std::uint64_t ulen = sys.u.size();
  std::uint64_t skip = z;
  while (!c.at_end()) {
    bool ok = false;
    for (ObjectKind k : {ObjectKind::One, ObjectKind::Zero, ObjectKind::EpsPrime, ObjectKind::Eps,
                         ObjectKind::OnePrime}) {
      Cursor trial = c;
      if (parse_object(trial, sys.tmpl(k), skip, ulen)) {
        c = trial;
        res.state.objects.push_back(k);
        if (k == ObjectKind::Eps) ++res.eps;
        if (k == ObjectKind::EpsPrime) ++res.eps_prime;
        ok = true;
        break;
      }
    }
    if (!ok)
      fail(ErrorCode::Decode, "no object template matches at offset " + std::to_string(c.offset()));
    skip = 0;
  }
  res.payload = res.state.payload();
  return res;
}

}  // namespace

DecodeResult decode_dataword(const tagcore::Dataword& w, const CompiledSystem& sys) {
  if (w.size() == 0) fail(ErrorCode::Decode, "empty dataword");
  if (w.symbols().bits_per_symbol() != 1) fail(ErrorCode::Decode, "dataword is not binary");
  if (sys.variant != compiler::Variant::Standard)
    fail(ErrorCode::Decode, "raw decoding needs a standard compiled system");
  return decode_with(PackedCursor(w.symbols(), sys.u), sys, w.entry_shift());
}

DecodeResult decode_engine(const SymbolEngine& e, const CompiledSystem& sys) {
  if (sys.variant != compiler::Variant::Standard)
    fail(ErrorCode::Decode, "rope decoding needs a standard compiled system");
  if (e.segments().empty()) fail(ErrorCode::Decode, "empty dataword");
  return decode_with(RopeCursor(e.segments(), sys.rule_word.size()), sys, e.head_offset());
}

}  // namespace tagpcp::simulator

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tagpcp/errors.hpp"
#include "tagpcp/packed.hpp"

namespace tagpcp::tagcore {

using Symbol = std::uint8_t;

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::string glyphs);

  std::size_t size() const { return glyphs_.size(); }
  char glyph(Symbol s) const { return glyphs_.at(s); }
  const std::string& glyphs() const { return glyphs_; }
  std::optional<Symbol> index_of(char c) const;
  // Storage width used for datawords over this alphabet.
  unsigned bits() const { return glyphs_.size() <= 2 ? 1 : 8; }

 private:
  std::string glyphs_;
};

class Dataword {
 public:
  Dataword() : symbols_(1) {}
  explicit Dataword(const Alphabet& a) : symbols_(a.bits()) {}
  explicit Dataword(PackedSymbols symbols, std::uint64_t entry_shift = 0)
      : symbols_(std::move(symbols)), entry_shift_(entry_shift) {}

  static Dataword from_text(std::string_view text, const Alphabet& a);
  std::string to_text(const Alphabet& a) const;

  std::uint64_t size() const { return symbols_.size(); }
  Symbol operator[](std::uint64_t i) const { return symbols_[i]; }
  const PackedSymbols& symbols() const { return symbols_; }
  PackedSymbols& symbols() { return symbols_; }

  std::uint64_t entry_shift() const { return entry_shift_; }
  void set_entry_shift(std::uint64_t z, std::uint64_t beta);

  bool operator==(const Dataword& o) const {
    return entry_shift_ == o.entry_shift_ && symbols_ == o.symbols_;
  }

 private:
  PackedSymbols symbols_;
  std::uint64_t entry_shift_ = 0;
};

class TagSystem {
 public:
  TagSystem(Alphabet alphabet, std::uint64_t beta,
            std::vector<std::vector<Symbol>> appendants);
  // Rules given as (symbol, appendant) pairs; the alphabet is the set of rule
  // symbols in order of appearance.
  static TagSystem from_rules(std::uint64_t beta,
                              const std::vector<std::pair<char, std::string>>& rules);
  static TagSystem parse(std::string_view text);
  std::string to_text() const;

  const Alphabet& alphabet() const { return alphabet_; }
  std::uint64_t beta() const { return beta_; }
  const PackedSymbols& appendant(Symbol s) const { return appendants_.at(s); }

 private:
  Alphabet alphabet_;
  std::uint64_t beta_;
  std::vector<PackedSymbols> appendants_;
};

struct Halted {
  Dataword word;
};

using StepResult = std::variant<Dataword, Halted>;

StepResult tag_step(const TagSystem& sys, const Dataword& w);

// In-place step; returns false (leaving w untouched) when |w| < beta.
bool step_in_place(const TagSystem& sys, Dataword& w);

struct RunResult {
  Dataword word;
  std::uint64_t steps = 0;
  bool halted = false;
};

RunResult tag_run(const TagSystem& sys, Dataword w, std::uint64_t max_steps);

template <class T>
std::vector<T> track_of(std::span<const T> w, std::uint64_t z, std::uint64_t beta) {
  if (beta == 0 || z >= beta) fail(ErrorCode::InvalidShift, "track shift must be below beta");
  std::vector<T> out;
  for (std::uint64_t i = z; i < w.size(); i += beta) out.push_back(w[i]);
  return out;
}

std::string track_of(std::string_view w, std::uint64_t z, std::uint64_t beta);
PackedSymbols track_of(const PackedSymbols& w, std::uint64_t z, std::uint64_t beta);

std::uint64_t shift_change(std::uint64_t length, std::uint64_t beta);

struct ShiftReport {
  std::uint64_t shift_change = 0;
  std::uint64_t symbols_read = 0;
  std::uint64_t exit_shift = 0;
};

// Executes the tag steps that read `prefix` entered with shift `entry`.
// When rest_nonempty is set a filler word of beta symbols follows the prefix
// so the exit shift is observed on a real read position.
ShiftReport round_on(const TagSystem& sys, const Dataword& prefix,
                     std::uint64_t entry, bool rest_nonempty);

}  // namespace tagpcp::tagcore

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tagpcp {

// Append-only symbol buffer with cheap front deletion. Symbols are packed
// 1 bit each for binary alphabets, 8 bits otherwise.
class PackedSymbols {
 public:
  explicit PackedSymbols(unsigned bits_per_symbol = 1);

  unsigned bits_per_symbol() const { return bits_; }
  std::uint64_t size() const { return end_ - begin_; }
  bool empty() const { return end_ == begin_; }

  std::uint8_t operator[](std::uint64_t i) const { return get(begin_ + i); }

  void push_back(std::uint8_t s);
  void append_run(std::uint8_t s, std::uint64_t n);
  // Appends other[from, from+count).
  void append(const PackedSymbols& other, std::uint64_t from,
              std::uint64_t count);
  void append(const PackedSymbols& other) { append(other, 0, other.size()); }
  void drop_front(std::uint64_t n);
  void clear();
  void reserve(std::uint64_t n);

  // Only meaningful for the 1-bit layout.
  std::uint64_t count_ones(std::uint64_t from, std::uint64_t count) const;
  bool all_zero(std::uint64_t from, std::uint64_t count) const {
    return count_ones(from, count) == 0;
  }
  bool range_equals(std::uint64_t from, const PackedSymbols& other,
                    std::uint64_t other_from, std::uint64_t count) const;

  // Up to 64/bits symbols starting at logical index i, low symbol first.
  std::uint64_t chunk(std::uint64_t i, unsigned nsym) const {
    return get_chunk(begin_ + i, nsym);
  }

  bool operator==(const PackedSymbols& o) const;
  bool operator!=(const PackedSymbols& o) const { return !(*this == o); }

  // Symbol i rendered through `glyphs` (glyphs[symbol]).
  std::string to_string(const std::string& glyphs) const;

 private:
  std::uint8_t get(std::uint64_t abs) const;
  std::uint64_t get_chunk(std::uint64_t abs, unsigned nsym) const;
  void put_chunk(std::uint64_t value, unsigned nsym);
  void ensure_capacity(std::uint64_t abs_end);
  void compact();

  unsigned bits_;
  unsigned per_word_;
  std::uint64_t mask_;
  std::vector<std::uint64_t> words_;
  std::uint64_t begin_ = 0;
  std::uint64_t end_ = 0;
};

}  // namespace tagpcp

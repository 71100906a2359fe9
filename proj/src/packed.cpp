#include "tagpcp/packed.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

#include "tagpcp/errors.hpp"

namespace tagpcp {

PackedSymbols::PackedSymbols(unsigned bits_per_symbol) : bits_(bits_per_symbol) {
  if (bits_ != 1 && bits_ != 2 && bits_ != 4 && bits_ != 8)
    fail(ErrorCode::InvalidArgument, "unsupported symbol width");
  per_word_ = 64 / bits_;
  mask_ = (std::uint64_t{1} << bits_) - 1;
}

std::uint8_t PackedSymbols::get(std::uint64_t abs) const {
  std::uint64_t w = abs / per_word_;
  unsigned off = static_cast<unsigned>(abs % per_word_) * bits_;
  return static_cast<std::uint8_t>((words_[w] >> off) & mask_);
}

std::uint64_t PackedSymbols::get_chunk(std::uint64_t abs, unsigned nsym) const {
  if (nsym == 0) return 0;
  std::uint64_t w = abs / per_word_;
  unsigned off = static_cast<unsigned>(abs % per_word_) * bits_;
  unsigned total = nsym * bits_;
  std::uint64_t v = words_[w] >> off;
  if (off + total > 64) v |= words_[w + 1] << (64 - off);
  if (total < 64) v &= (std::uint64_t{1} << total) - 1;
  return v;
}

void PackedSymbols::ensure_capacity(std::uint64_t abs_end) {
  std::uint64_t need = (abs_end + per_word_ - 1) / per_word_ + 1;
  if (words_.size() < need) {
    if (words_.capacity() < need)
      words_.reserve(std::max<std::uint64_t>(need, words_.capacity() * 2));
    words_.resize(need, 0);
  }
}

void PackedSymbols::put_chunk(std::uint64_t value, unsigned nsym) {
  if (nsym == 0) return;
  ensure_capacity(end_ + nsym);
  std::uint64_t w = end_ / per_word_;
  unsigned off = static_cast<unsigned>(end_ % per_word_) * bits_;
  unsigned total = nsym * bits_;
  words_[w] |= value << off;
  if (off + total > 64) words_[w + 1] |= value >> (64 - off);
  end_ += nsym;
}

void PackedSymbols::push_back(std::uint8_t s) {
  if (s > mask_) fail(ErrorCode::MalformedDataword, "symbol does not fit storage width");
  put_chunk(s, 1);
}

void PackedSymbols::append_run(std::uint8_t s, std::uint64_t n) {
  if (s > mask_) fail(ErrorCode::MalformedDataword, "symbol does not fit storage width");
  std::uint64_t pattern = 0;
  for (unsigned i = 0; i < per_word_; ++i) pattern |= std::uint64_t{s} << (i * bits_);
  while (n > 0) {
    unsigned k = static_cast<unsigned>(std::min<std::uint64_t>(n, per_word_));
    std::uint64_t v = k == per_word_ ? pattern : pattern & ((std::uint64_t{1} << (k * bits_)) - 1);
    put_chunk(v, k);
    n -= k;
  }
}

void PackedSymbols::append(const PackedSymbols& other, std::uint64_t from,
                           std::uint64_t count) {
  if (other.bits_ != bits_) fail(ErrorCode::InvalidArgument, "symbol width mismatch");
  if (from + count > other.size()) fail(ErrorCode::InvalidArgument, "append range out of bounds");
  std::uint64_t src = other.begin_ + from;
  while (count > 0) {
    unsigned k = static_cast<unsigned>(std::min<std::uint64_t>(count, per_word_));
    std::uint64_t v = other.get_chunk(src, k);
    put_chunk(v, k);
    src += k;
    count -= k;
  }
}

void PackedSymbols::clear() {
  std::fill(words_.begin(), words_.end(), 0);
  begin_ = end_ = 0;
}

void PackedSymbols::reserve(std::uint64_t n) {
  words_.reserve((begin_ + n) / per_word_ + 2);
}

void PackedSymbols::drop_front(std::uint64_t n) {
  if (n > size()) fail(ErrorCode::InvalidArgument, "drop past end");
  begin_ += n;
  if (begin_ == end_) {
    clear();
    return;
  }
  compact();
}

void PackedSymbols::compact() {
  std::uint64_t dead = begin_ / per_word_;
  if (dead < 1024 || dead * 2 < words_.size()) return;
  std::uint64_t live = words_.size() - dead;
  std::copy(words_.begin() + static_cast<std::ptrdiff_t>(dead), words_.end(), words_.begin());
  std::fill(words_.begin() + static_cast<std::ptrdiff_t>(live), words_.end(), 0);
  words_.resize(live);
  begin_ -= dead * per_word_;
  end_ -= dead * per_word_;
}

std::uint64_t PackedSymbols::count_ones(std::uint64_t from, std::uint64_t count) const {
  if (from + count > size()) fail(ErrorCode::InvalidArgument, "count range out of bounds");
  std::uint64_t abs = begin_ + from, total = 0;
  while (count > 0) {
    unsigned k = static_cast<unsigned>(std::min<std::uint64_t>(count, per_word_));
    std::uint64_t v = get_chunk(abs, k);
    if (bits_ == 1) {
      total += static_cast<std::uint64_t>(std::popcount(v));
    } else {
      for (unsigned i = 0; i < k; ++i)
        if ((v >> (i * bits_)) & mask_) ++total;
    }
    abs += k;
    count -= k;
  }
  return total;
}

bool PackedSymbols::range_equals(std::uint64_t from, const PackedSymbols& other,
                                 std::uint64_t other_from, std::uint64_t count) const {
  if (other.bits_ != bits_) return false;
  if (from + count > size() || other_from + count > other.size()) return false;
  std::uint64_t a = begin_ + from, b = other.begin_ + other_from;
  while (count > 0) {
    unsigned k = static_cast<unsigned>(std::min<std::uint64_t>(count, per_word_));
    if (get_chunk(a, k) != other.get_chunk(b, k)) return false;
    a += k;
    b += k;
    count -= k;
  }
  return true;
}

bool PackedSymbols::operator==(const PackedSymbols& o) const {
  return size() == o.size() && range_equals(0, o, 0, size());
}

std::string PackedSymbols::to_string(const std::string& glyphs) const {
  std::string out;
  out.reserve(size());
  for (std::uint64_t i = 0; i < size(); ++i) {
    std::uint8_t s = (*this)[i];
    out.push_back(s < glyphs.size() ? glyphs[s] : '?');
  }
  return out;
}

}  // namespace tagpcp

#include <cctype>

#include "tagpcp/pcp.hpp"
#include "tagpcp/text.hpp"

namespace tagpcp::pcp {

namespace {

// Feeds maximal runs of w to f, merging across token boundaries.
template <class F>
void for_each_run(const Word& w, F&& f) {
  Run pending{'0', 0};
  auto emit = [&](char c, std::uint64_t n) {
    if (n == 0) return;
    if (pending.count && pending.sym == c) {
      pending.count += n;
      return;
    }
    if (pending.count) f(pending);
    pending = {c, n};
  };
  for (const auto& t : w.tokens()) {
    if (auto* r = std::get_if<Run>(&t)) {
      emit(r->sym, r->count);
      continue;
    }
    const auto& e = std::get<Word::Encoded>(t);
    const auto& sym = *e.word;
    for (std::uint64_t i = 0; i < sym.size(); ++i) {
      if (sym[i] == compiler::kC) {
        emit('1', 1);
      } else {
        emit('1', 1);
        emit('0', e.beta);
        emit('1', 1);
      }
    }
  }
  if (pending.count) f(pending);
}

}  // namespace

static std::uint64_t run_total(const Word& w) {
  std::uint64_t n = 0;
  for (const auto& t : w.tokens())
    if (auto* r = std::get_if<Run>(&t)) n += r->count;
  return n;
}

Word Word::literal(std::string_view s) {
  Word w;
  w.append_literal(s);
  return w;
}

Word Word::encoded(std::shared_ptr<const PackedSymbols> sym, std::uint64_t beta) {
  Word w;
  std::uint64_t n = 0;
  for (std::uint64_t i = 0; i < sym->size(); ++i) n += (*sym)[i] == compiler::kC ? 1 : beta + 2;
  if (n == 0) return w;
  w.tokens_.push_back(Encoded{std::move(sym), beta});
  w.size_ = n;
  return w;
}

void Word::append_run(char sym, std::uint64_t n) {
  if (n == 0) return;
  size_ += n;
  if (!tokens_.empty())
    if (auto* r = std::get_if<Run>(&tokens_.back()); r && r->sym == sym) {
      r->count += n;
      return;
    }
  tokens_.push_back(Run{sym, n});
}

void Word::append_literal(std::string_view s) {
  for (char c : s) append_run(c, 1);
}

void Word::append(const Word& w) {
  for (const auto& t : w.tokens_) {
    if (auto* r = std::get_if<Run>(&t)) {
      append_run(r->sym, r->count);
    } else {
      tokens_.push_back(t);
    }
  }
  size_ = w.size_ + size_ - run_total(w);
}

std::vector<Run> Word::runs() const {
  std::vector<Run> out;
  for_each_run(*this, [&](const Run& r) { out.push_back(r); });
  return out;
}

std::string Word::expand(std::uint64_t limit) const {
  if (size_ > limit)
    fail(ErrorCode::OutOfRange, "word of length " + std::to_string(size_) +
                                    " exceeds expansion limit " + std::to_string(limit));
  std::string s;
  s.reserve(size_);
  for_each_run(*this, [&](const Run& r) { s.append(r.count, r.sym); });
  return s;
}

std::string Word::to_text() const {
  if (empty()) return "()";
  std::string s;
  for_each_run(*this, [&](const Run& r) {
    if (r.count < 8) {
      s.append(r.count, r.sym);
    } else {
      s += '(';
      s += r.sym;
      s += '^';
      s += std::to_string(r.count);
      s += ')';
    }
  });
  return s;
}

Word Word::parse(std::string_view text) {
  Word w;
  if (text == "()") return w;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '(') {
      auto close = text.find(')', i);
      if (close == std::string_view::npos || close < i + 4 || text[i + 2] != '^')
        text::parse_error(1, i + 1, "malformed run, expected (c^N)");
      w.append_run(text[i + 1], text::parse_u64(text.substr(i + 3, close - i - 3), 1, i + 4));
      i = close + 1;
    } else if (c == ')' || c == '^' || std::isspace(static_cast<unsigned char>(c))) {
      text::parse_error(1, i + 1, std::string("unexpected '") + c + "'");
    } else {
      w.append_run(c, 1);
      ++i;
    }
  }
  return w;
}

bool operator==(const Word& a, const Word& b) {
  return a.size() == b.size() && a.runs() == b.runs();
}

Instance Instance::parse(std::string_view text) {
  Instance inst;
  auto lines = text::split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    auto line = text::trim(lines[ln]);
    if (line.empty() || line[0] == '#') continue;
    auto fields = text::split_ws(line);
    if (fields.size() != 2)
      text::parse_error(ln + 1, 1, "expected two words per pair, use () for the empty word");
    try {
      inst.pairs.push_back({Word::parse(fields[0]), Word::parse(fields[1])});
    } catch (const Error& e) {
      text::parse_error(ln + 1, 1, e.what());
    }
  }
  if (inst.pairs.empty()) text::parse_error(1, 1, "instance has no pairs");
  return inst;
}

std::string Instance::to_text() const {
  std::string s;
  for (const auto& p : pairs) s += p.r.to_text() + "\t" + p.v.to_text() + "\n";
  return s;
}

}  // namespace tagpcp::pcp

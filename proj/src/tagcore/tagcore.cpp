#include "tagpcp/tagcore.hpp"

#include <sstream>

#include "tagpcp/text.hpp"

namespace tagpcp::tagcore {

Alphabet::Alphabet(std::string glyphs) : glyphs_(std::move(glyphs)) {
  if (glyphs_.empty()) fail(ErrorCode::InvalidArgument, "empty alphabet");
  if (glyphs_.size() > 256) fail(ErrorCode::InvalidArgument, "alphabet larger than 256 symbols");
  for (std::size_t i = 0; i < glyphs_.size(); ++i)
    for (std::size_t j = i + 1; j < glyphs_.size(); ++j)
      if (glyphs_[i] == glyphs_[j])
        fail(ErrorCode::InvalidArgument, std::string("duplicate alphabet symbol '") + glyphs_[i] + "'");
}

std::optional<Symbol> Alphabet::index_of(char c) const {
  auto pos = glyphs_.find(c);
  if (pos == std::string::npos) return std::nullopt;
  return static_cast<Symbol>(pos);
}

Dataword Dataword::from_text(std::string_view text, const Alphabet& a) {
  Dataword w(a);
  for (std::size_t i = 0; i < text.size(); ++i) {
    auto s = a.index_of(text[i]);
    if (!s)
      fail(ErrorCode::MalformedDataword,
           "symbol '" + std::string(1, text[i]) + "' at column " + std::to_string(i + 1) +
               " is not in the alphabet");
    w.symbols_.push_back(*s);
  }
  return w;
}

std::string Dataword::to_text(const Alphabet& a) const { return symbols_.to_string(a.glyphs()); }

void Dataword::set_entry_shift(std::uint64_t z, std::uint64_t beta) {
  if (z >= beta) fail(ErrorCode::InvalidShift, "entry shift " + std::to_string(z) + " >= beta");
  entry_shift_ = z;
}

TagSystem::TagSystem(Alphabet alphabet, std::uint64_t beta,
                     std::vector<std::vector<Symbol>> appendants)
    : alphabet_(std::move(alphabet)), beta_(beta) {
  if (beta_ < 1) fail(ErrorCode::InvalidArgument, "deletion number must be at least 1");
  if (appendants.size() != alphabet_.size())
    fail(ErrorCode::InvalidArgument, "rules must cover every alphabet symbol exactly once");
  for (const auto& a : appendants) {
    PackedSymbols p(alphabet_.bits());
    for (Symbol s : a) {
      if (s >= alphabet_.size()) fail(ErrorCode::InvalidArgument, "appendant symbol outside alphabet");
      p.push_back(s);
    }
    appendants_.push_back(std::move(p));
  }
}

TagSystem TagSystem::from_rules(std::uint64_t beta,
                                const std::vector<std::pair<char, std::string>>& rules) {
  std::string glyphs;
  for (const auto& [c, _] : rules) {
    if (glyphs.find(c) != std::string::npos)
      fail(ErrorCode::InvalidArgument, std::string("duplicate rule for '") + c + "'");
    glyphs.push_back(c);
  }
  Alphabet a(glyphs);
  std::vector<std::vector<Symbol>> apps;
  for (const auto& [c, word] : rules) {
    std::vector<Symbol> v;
    for (char ch : word) {
      auto s = a.index_of(ch);
      if (!s)
        fail(ErrorCode::InvalidArgument,
             std::string("appendant of '") + c + "' uses symbol '" + ch + "' with no rule");
      v.push_back(*s);
    }
    apps.push_back(std::move(v));
  }
  return TagSystem(std::move(a), beta, std::move(apps));
}

TagSystem TagSystem::parse(std::string_view text) {
  std::optional<std::uint64_t> beta;
  std::vector<std::pair<char, std::string>> rules;
  std::size_t lineno = 0;
  for (std::string_view line : text::split_lines(text)) {
    ++lineno;
    std::string_view t = text::trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!beta) {
      if (t.substr(0, 5) != "beta=")
        text::parse_error(lineno, 1, "expected 'beta=N' header");
      beta = text::parse_u64(t.substr(5), lineno, 6);
      continue;
    }
    auto arrow = t.find("->");
    if (arrow == std::string_view::npos) text::parse_error(lineno, 1, "expected 'sym -> word'");
    std::string_view lhs = text::trim(t.substr(0, arrow));
    std::string_view rhs = text::trim(t.substr(arrow + 2));
    if (lhs.size() != 1) text::parse_error(lineno, 1, "rule symbol must be a single character");
    for (const auto& r : rules)
      if (r.first == lhs[0]) text::parse_error(lineno, 1, "duplicate rule");
    rules.emplace_back(lhs[0], std::string(rhs));
  }
  if (!beta) text::parse_error(lineno, 1, "missing 'beta=N' header");
  if (rules.empty()) text::parse_error(lineno, 1, "no rules");
  try {
    return from_rules(*beta, rules);
  } catch (const Error& e) {
    text::parse_error(lineno, 1, e.what());
  }
}

std::string TagSystem::to_text() const {
  std::ostringstream os;
  os << "beta=" << beta_ << "\n";
  for (std::size_t s = 0; s < alphabet_.size(); ++s)
    os << alphabet_.glyph(static_cast<Symbol>(s)) << " -> "
       << appendants_[s].to_string(alphabet_.glyphs()) << "\n";
  return os.str();
}

bool step_in_place(const TagSystem& sys, Dataword& w) {
  if (w.size() < sys.beta()) return false;
  Symbol head = w[0];
  if (head >= sys.alphabet().size())
    fail(ErrorCode::MalformedDataword, "head symbol " + std::to_string(head) + " outside alphabet");
  w.symbols().drop_front(sys.beta());
  w.symbols().append(sys.appendant(head));
  return true;
}

StepResult tag_step(const TagSystem& sys, const Dataword& w) {
  Dataword next = w;
  if (!step_in_place(sys, next)) return Halted{w};
  return next;
}

RunResult tag_run(const TagSystem& sys, Dataword w, std::uint64_t max_steps) {
  RunResult r{std::move(w), 0, false};
  while (r.steps < max_steps) {
    if (!step_in_place(sys, r.word)) {
      r.halted = true;
      return r;
    }
    ++r.steps;
  }
  r.halted = r.word.size() < sys.beta();
  return r;
}

std::string track_of(std::string_view w, std::uint64_t z, std::uint64_t beta) {
  auto v = track_of(std::span<const char>(w.data(), w.size()), z, beta);
  return std::string(v.begin(), v.end());
}

PackedSymbols track_of(const PackedSymbols& w, std::uint64_t z, std::uint64_t beta) {
  if (beta == 0 || z >= beta) fail(ErrorCode::InvalidShift, "track shift must be below beta");
  PackedSymbols out(w.bits_per_symbol());
  for (std::uint64_t i = z; i < w.size(); i += beta) out.push_back(w[i]);
  return out;
}

std::uint64_t shift_change(std::uint64_t length, std::uint64_t beta) {
  if (beta == 0) fail(ErrorCode::InvalidArgument, "beta must be positive");
  return (beta - length % beta) % beta;
}

ShiftReport round_on(const TagSystem& sys, const Dataword& prefix, std::uint64_t entry,
                     bool rest_nonempty) {
  const std::uint64_t beta = sys.beta();
  if (entry >= beta) fail(ErrorCode::InvalidShift, "entry shift must be below beta");
  const std::uint64_t n = prefix.size();
  ShiftReport rep;
  rep.shift_change = shift_change(n, beta);

  Dataword w(PackedSymbols(prefix.symbols().bits_per_symbol()));
  if (entry < n) w.symbols().append(prefix.symbols(), entry, n - entry);
  if (rest_nonempty) w.symbols().append_run(0, beta);

  std::uint64_t head = entry;
  while (head < n) {
    step_in_place(sys, w);
    ++rep.symbols_read;
    head += beta;
  }
  rep.exit_shift = head - n;
  return rep;
}

}  // namespace tagpcp::tagcore

#include <algorithm>
#include <sstream>

#include "tagpcp/compiler.hpp"
#include "tagpcp/text.hpp"

namespace tagpcp::compiler {

std::string rle_encode(const PackedSymbols& w) {
  std::string out;
  for (std::uint64_t i = 0; i < w.size();) {
    std::uint64_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    out += kGlyphs[w[i]];
    out += std::to_string(j - i);
    i = j;
  }
  return out;
}

PackedSymbols rle_decode(std::string_view s) {
  PackedSymbols w(1);
  std::size_t i = 0;
  while (i < s.size()) {
    char g = s[i];
    if (g != 'b' && g != 'c')
      fail(ErrorCode::Parse, "run-length word: expected b or c at offset " + std::to_string(i));
    std::size_t j = ++i;
    while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
    if (j == i) fail(ErrorCode::Parse, "run-length word: missing count at offset " + std::to_string(i));
    w.append_run(g == 'c' ? kC : kB, text::parse_u64(s.substr(i, j - i), 0, i + 1));
    i = j;
  }
  return w;
}

std::string serialize(const CompiledSystem& sys) {
  std::ostringstream os;
  const Params& p = sys.params;
  os << "tagpcp-compiled 1\n";
  os << "variant " << (sys.variant == Variant::PcpReady ? "pcp-ready" : "standard") << "\n";
  os << "p " << p.p << "\nk " << p.k << "\nq " << p.q << "\nx " << p.x << "\nr " << p.r << "\n";
  os << "z1 " << p.z1 << "\nz2 " << p.z2 << "\nbeta " << p.beta << "\nu_length " << p.u_length
     << "\n";
  os << "halting_index " << (sys.halting_index ? std::to_string(*sys.halting_index) : "none") << "\n";
  os << "pcp_input " << (sys.pcp_input ? *sys.pcp_input : "none") << "\n";
  os << "program " << sys.base.size() << "\n" << sys.base.to_text();
  os << "u " << rle_encode(sys.rule_word) << "\n";
  auto shifts = sys.ledger.shifts();
  os << "ledger " << shifts.size() << "\n";
  for (std::uint64_t s : shifts) {
    const TrackEntry* e = sys.ledger.find(s);
    os << s << "\t" << e->content << "\t" << e->provenance.describe() << "\n";
  }
  os << "end\n";
  return os.str();
}

CompiledSystem deserialize(std::string_view textv) {
  auto lines = text::split_lines(textv);
  std::size_t ln = 0;
  auto next = [&]() -> std::string_view {
    if (ln >= lines.size()) text::parse_error(ln + 1, 1, "unexpected end of compiled file");
    return lines[ln++];
  };
  auto keyed = [&](std::string_view key) -> std::string_view {
    std::string_view l = next();
    if (l.substr(0, key.size()) != key || l.size() <= key.size() || l[key.size()] != ' ')
      text::parse_error(ln, 1, "expected '" + std::string(key) + " ...'");
    return l.substr(key.size() + 1);
  };
  auto num = [&](std::string_view key) { return text::parse_u64(keyed(key), ln, key.size() + 2); };

  if (next() != "tagpcp-compiled 1") text::parse_error(1, 1, "not a compiled-system file");
  CompiledSystem sys;
  std::string_view v = keyed("variant");
  if (v == "pcp-ready") sys.variant = Variant::PcpReady;
  else if (v != "standard") text::parse_error(ln, 9, "unknown variant");
  std::uint64_t p = num("p"), k = num("k"), q = num("q"), x = num("x"), r = num("r");
  std::uint64_t z1 = num("z1"), z2 = num("z2"), beta = num("beta"), ul = num("u_length");
  try {
    sys.params = Params::at(p, x, r);
  } catch (const Error& e) {
    text::parse_error(ln, 1, e.what());
  }
  const Params& pr = sys.params;
  if (pr.k != k || pr.q != q || pr.z1 != z1 || pr.z2 != z2 || pr.beta != beta || pr.u_length != ul)
    text::parse_error(ln, 1, "header parameters are inconsistent");
  std::string_view h = keyed("halting_index");
  if (h != "none") sys.halting_index = text::parse_u64(h, ln, 15);
  std::string_view in = keyed("pcp_input");
  if (in != "none") sys.pcp_input = std::string(in);
  std::uint64_t n = num("program");
  std::string prog;
  for (std::uint64_t i = 0; i < n; ++i) prog += std::string(next()) + "\n";
  sys.base = cyclic::Program::parse(prog);

  sys.rule_word = rle_decode(keyed("u"));
  if (sys.rule_word.size() != pr.u_length) text::parse_error(ln, 1, "u has the wrong length");
  if (sys.variant == Variant::PcpReady) {
    sys.u = PackedSymbols(1);
    sys.u.push_back(kB);
    sys.u.append(sys.rule_word, 0, sys.rule_word.size() - 1);
    cyclic::Program qp = pcp_ready_program(sys.base, *sys.pcp_input);
    std::vector<std::string> a = cyclic::replicate_program(qp, pr.q).appendants();
    std::rotate(a.rbegin(), a.rbegin() + 1, a.rend());
    sys.source = cyclic::Program(std::move(a));
  } else {
    sys.u = sys.rule_word;
    sys.source = cyclic::replicate_program(sys.base, pr.q);
  }

  std::uint64_t entries = num("ledger");
  sys.ledger = TrackLedger(pr.beta);
  for (std::uint64_t i = 0; i < entries; ++i) {
    std::string_view l = next();
    auto t1 = l.find('\t');
    auto t2 = t1 == std::string_view::npos ? t1 : l.find('\t', t1 + 1);
    if (t2 == std::string_view::npos) text::parse_error(ln, 1, "ledger line needs three fields");
    std::uint64_t s = text::parse_u64(l.substr(0, t1), ln, 1);
    Provenance prov;
    try {
      prov = Provenance::parse(l.substr(t2 + 1));
    } catch (const Error& e) {
      text::parse_error(ln, t2 + 2, e.what());
    }
    if (!sys.ledger.assign(s, std::string(l.substr(t1 + 1, t2 - t1 - 1)), prov))
      text::parse_error(ln, 1, "ledger assigns shift " + std::to_string(s) + " twice");
  }
  if (next() != "end") text::parse_error(ln, 1, "expected 'end'");
  for (ObjectKind kk : kAllKinds) sys.templates[static_cast<std::size_t>(kk)] = make_template(kk, pr);
  return sys;
}

}  // namespace tagpcp::compiler

#include "tagpcp/pcp.hpp"

namespace tagpcp::pcp {

using compiler::kB;
using compiler::kC;

RuleShape RuleShape::from_body(std::uint64_t beta, std::string_view body) {
  if (beta < 2) fail(ErrorCode::InvalidArgument, "beta must be at least 2");
  auto p = std::make_shared<PackedSymbols>(1);
  for (char ch : body) {
    if (ch == 'b') p->push_back(kB);
    else if (ch == 'c') p->push_back(kC);
    else fail(ErrorCode::InvalidArgument, std::string("body symbol '") + ch + "' is not b or c");
  }
  if (p->size() + 1 < beta)
    fail(ErrorCode::InvalidArgument, "body b must have at least beta symbols");
  return RuleShape{beta, std::move(p)};
}

RuleShape RuleShape::from_tag_system(const tagcore::TagSystem& sys) {
  const auto& a = sys.alphabet();
  auto b = a.index_of('b');
  auto c = a.index_of('c');
  if (a.size() != 2 || !b || !c)
    fail(ErrorCode::UnsupportedArity, "reduction needs a tag system over {b, c}");
  const auto& ab = sys.appendant(*b);
  if (ab.size() != 1 || ab[0] != *b) fail(ErrorCode::InvalidArgument, "rule of b must be b -> b");
  const auto& ac = sys.appendant(*c);
  if (ac.empty() || ac[ac.size() - 1] != *b)
    fail(ErrorCode::InvalidArgument, "appendant of c must end in b");
  std::string body;
  for (std::uint64_t i = 0; i + 1 < ac.size(); ++i) body += ac[i] == *b ? 'b' : 'c';
  return from_body(sys.beta(), body);
}

RuleShape RuleShape::from_compiled(const compiler::CompiledSystem& sys) {
  if (sys.variant != compiler::Variant::PcpReady)
    fail(ErrorCode::InvalidArgument, "reduction needs a pcp-ready compiled system");
  const auto& w = sys.rule_word;
  if (w.empty() || w[w.size() - 1] != kB)
    fail(ErrorCode::InvalidArgument, "rule word must end in b");
  auto p = std::make_shared<PackedSymbols>(1);
  p->append(w, 0, w.size() - 1);
  return RuleShape{sys.params.beta, std::move(p)};
}

tagcore::TagSystem RuleShape::tag_system() const {
  return tagcore::TagSystem::from_rules(beta, {{'b', "b"}, {'c', body->to_string(compiler::kGlyphs) + "b"}});
}

tagcore::Dataword RuleShape::input() const {
  PackedSymbols w(1);
  w.append(*body, beta - 1, body->size() - (beta - 1));
  w.push_back(kB);
  return tagcore::Dataword(std::move(w));
}

Instance reduce_to_pcp(const RuleShape& shape) {
  const std::uint64_t beta = shape.beta;
  Instance inst;
  Word v1 = Word::literal("1");
  v1.append(Word::encoded(shape.body, beta));
  v1.append_literal("10");
  inst.pairs.push_back({Word::literal("1"), std::move(v1)});

  Word enc_b = Word::literal("1");
  enc_b.append_run('0', beta);
  enc_b.append_literal("1");
  inst.pairs.push_back({enc_b, Word::literal("110")});

  Word head = Word::literal("1");
  head.append_run('0', beta);
  inst.pairs.push_back({head, Word{}});

  inst.pairs.push_back({Word::literal("1"), Word::literal("0")});
  return inst;
}

Instance reduce_to_pcp(const compiler::CompiledSystem& sys) {
  return reduce_to_pcp(RuleShape::from_compiled(sys));
}

}  // namespace tagpcp::pcp

#include "tagpcp/pcp.hpp"

namespace tagpcp::pcp {

void Surplus::append_runs(const std::vector<Run>& rs) {
  for (const auto& r : rs) {
    if (r.count == 0) continue;
    size_ += r.count;
    if (!runs_.empty() && runs_.back().sym == r.sym) {
      runs_.back().count += r.count;
    } else {
      runs_.push_back(r);
    }
  }
}

void Surplus::append(const Word& w) { append_runs(w.runs()); }

bool Surplus::starts_with(const std::vector<Run>& rs) const {
  if (rs.empty()) return true;
  if (rs.size() > runs_.size()) return false;
  for (std::size_t k = 0; k + 1 < rs.size(); ++k)
    if (!(runs_[k] == rs[k])) return false;
  const Run& last = rs.back();
  const Run& here = runs_[rs.size() - 1];
  return here.sym == last.sym && here.count >= last.count;
}

void Surplus::drop_prefix(const std::vector<Run>& rs) {
  if (rs.empty()) return;
  for (std::size_t k = 0; k + 1 < rs.size(); ++k) {
    size_ -= runs_.front().count;
    runs_.pop_front();
  }
  runs_.front().count -= rs.back().count;
  size_ -= rs.back().count;
  if (runs_.front().count == 0) runs_.pop_front();
}

std::string Surplus::to_string(std::uint64_t limit) const {
  if (size_ > limit) fail(ErrorCode::OutOfRange, "surplus too long to render");
  std::string s;
  for (const auto& r : runs_) s.append(r.count, r.sym);
  return s;
}

namespace {

bool head_is_b(const Surplus& s) {
  const auto& rs = s.runs();
  return rs.size() >= 2 && rs[0].sym == '1' && rs[0].count == 1 && rs[1].sym == '0';
}

bool bare_tail(const Surplus& s, std::uint64_t beta) {
  const auto& rs = s.runs();
  return rs.size() == 2 && rs[0] == Run{'1', 1} && rs[1] == Run{'0', beta};
}

}  // namespace

bool apply_pair(PcpConfig& cfg, const Instance& inst, std::size_t i) {
  if (i >= inst.pairs.size()) fail(ErrorCode::OutOfRange, "pair index out of range");
  const auto& pair = inst.pairs[i];
  const auto r = pair.r.runs();
  // r is matched against surplus followed by v, so v is appended first.
  Surplus probe = cfg.surplus;
  probe.append(pair.v);
  if (!probe.starts_with(r)) return false;
  probe.drop_prefix(r);
  cfg.surplus = std::move(probe);
  cfg.indices.push_back(i);
  cfg.r_length += inst.pairs[i].r.size();
  cfg.v_length += inst.pairs[i].v.size();
  return true;
}

std::optional<std::string> decode_surplus(const Surplus& s, std::uint64_t beta) {
  std::string out;
  const auto& rs = s.runs();
  std::size_t k = 0;
  std::uint64_t ones = 0;  // ones left in the current run
  while (true) {
    if (ones == 0) {
      if (k >= rs.size() || rs[k].sym != '1') return std::nullopt;
      ones = rs[k++].count;
    }
    if (ones > 1) {
      out += 'c';
      --ones;
      continue;
    }
    // a single 1 followed by zeros, or by nothing
    if (k >= rs.size()) return std::nullopt;
    if (rs[k].count != beta) return std::nullopt;
    ++k;
    if (k == rs.size()) {
      out += 'b';
      return out;
    }
    out += 'b';
    ones = rs[k++].count - 1;  // closing 1 of the b block
  }
}

Phase phase_of(const PcpConfig& cfg, std::uint64_t beta) {
  if (cfg.indices.empty()) return Phase::Start;
  const auto& rs = cfg.surplus.runs();
  if (rs.size() < 2 || rs.back().sym != '0' || rs[rs.size() - 2].sym != '1' ||
      rs.back().count > beta)
    fail(ErrorCode::Mismatch, "surplus does not end in an encoded tail");
  return rs.back().count == beta ? Phase::RuleDue : Phase::Deletion;
}

namespace {

std::vector<std::size_t> guided_pairs(const PcpConfig& cfg, std::uint64_t beta) {
  switch (phase_of(cfg, beta)) {
    case Phase::Start:
      return {0};
    case Phase::RuleDue:
      if (bare_tail(cfg.surplus, beta)) return {2};
      return {head_is_b(cfg.surplus) ? std::size_t{1} : std::size_t{0}};
    case Phase::Deletion:
      if (cfg.surplus.runs().size() == 2 && cfg.surplus.runs()[0].count == 1)
        fail(ErrorCode::Mismatch, "surplus exhausted in the middle of a deletion");
      if (head_is_b(cfg.surplus)) return {2, 3};
      return {3};
  }
  return {};
}

}  // namespace

GuidedResult guided_match_step(const PcpConfig& cfg, const Instance& inst, std::uint64_t beta) {
  if (inst.pairs.size() != 4) fail(ErrorCode::InvalidArgument, "guided matching needs four pairs");
  GuidedResult res{cfg, guided_pairs(cfg, beta), false};
  for (auto i : res.pairs)
    if (!apply_pair(res.cfg, inst, i))
      fail(ErrorCode::Mismatch, "pair " + std::to_string(i + 1) + " does not fit the surplus");
  res.matched = res.cfg.surplus.empty();
  return res;
}

const char* choice_name(Choice c) {
  switch (c) {
    case Choice::Guided: return "guided";
    case Choice::Inconsistent: return "inconsistent";
    case Choice::Doomed: return "doomed";
    case Choice::Viable: return "viable";
  }
  return "?";
}

bool doomed(const Surplus& s, std::uint64_t beta) {
  const auto& rs = s.runs();
  if (rs.empty()) return false;
  if (rs.front().sym != '1') return true;
  for (std::size_t k = 0; k < rs.size(); ++k) {
    if (rs[k].sym != '0') continue;
    if (k + 1 < rs.size() ? rs[k].count != beta : rs[k].count > beta) return true;
  }
  return false;
}

std::vector<Choice> audit_choices(const PcpConfig& cfg, const Instance& inst, std::uint64_t beta) {
  const std::size_t g = guided_pairs(cfg, beta).front();
  std::vector<Choice> out;
  for (std::size_t i = 0; i < inst.pairs.size(); ++i) {
    if (i == g) {
      out.push_back(Choice::Guided);
      continue;
    }
    PcpConfig c = cfg;
    if (!apply_pair(c, inst, i)) out.push_back(Choice::Inconsistent);
    else if (doomed(c.surplus, beta)) out.push_back(Choice::Doomed);
    else out.push_back(Choice::Viable);
  }
  return out;
}

const char* outcome_name(ReplayOutcome o) {
  switch (o) {
    case ReplayOutcome::Match: return "match";
    case ReplayOutcome::BudgetExhausted: return "budget";
    case ReplayOutcome::TagHalted: return "tag-halted";
  }
  return "?";
}

ReplayReport match_replay(const Instance& inst, const RuleShape& shape, std::uint64_t tag_steps,
                          const ReplayOptions& options) {
  const std::uint64_t beta = shape.beta;
  const auto sys = shape.tag_system();
  const tagcore::Alphabet& alpha = sys.alphabet();
  tagcore::Dataword d = shape.input();
  ReplayReport rep;
  PcpConfig cfg;

  auto op = [&] {
    if (options.probe_alternatives) {
      auto choices = audit_choices(cfg, inst, beta);
      ++rep.probes;
      const bool known = phase_of(cfg, beta) == Phase::RuleDue && head_is_b(cfg.surplus);
      for (std::size_t i = 0; i < choices.size(); ++i) {
        if (choices[i] != Choice::Viable) continue;
        ++rep.surviving_alternatives;
        // a b head at rule time can also be cut as 1 0^beta or read as a full block
        if (!(known && (i == 1 || i == 2))) ++rep.unexplained_alternatives;
      }
    }
    auto g = guided_match_step(cfg, inst, beta);
    cfg = std::move(g.cfg);
    return g.matched;
  };
  auto check = [&](std::uint64_t step) {
    auto dec = decode_surplus(cfg.surplus, beta);
    const std::string want = d.to_text(alpha);
    if (!dec || *dec != want)
      fail(ErrorCode::Divergence, "surplus does not encode the dataword after tag step " +
                                      std::to_string(step));
    ++rep.decoded_checks;
    rep.dataword_lengths.push_back(d.size());
    if (d.size() % (beta - 1) != 1 % (beta - 1)) ++rep.length_law_violations;
  };

  op();  // forced first pair
  if (tag_steps > 0) {
    for (std::uint64_t k = 0; k + 1 < beta; ++k) op();
    check(0);
    while (true) {
      if (bare_tail(cfg.surplus, beta)) {
        op();
        if (!verify_solution(inst, cfg.indices))
          fail(ErrorCode::Mismatch, "guided match does not verify");
        rep.outcome = ReplayOutcome::Match;
        rep.match_length = cfg.r_length;
        break;
      }
      if (d.size() < beta) {
        rep.outcome = ReplayOutcome::TagHalted;
        break;
      }
      if (rep.tag_steps == tag_steps) break;
      for (std::uint64_t k = 0; k < beta; ++k) op();
      tagcore::step_in_place(sys, d);
      ++rep.tag_steps;
      check(rep.tag_steps);
    }
  }
  rep.indices = cfg.indices;
  rep.final_config = std::move(cfg);
  return rep;
}

}  // namespace tagpcp::pcp

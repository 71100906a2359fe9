#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tagpcp/compiler.hpp"
#include "tagpcp/packed.hpp"
#include "tagpcp/tagcore.hpp"

namespace tagpcp::pcp {

struct Run {
  char sym = '0';
  std::uint64_t count = 0;
  bool operator==(const Run&) const = default;
};

// Word stored as runs plus symbolic references to a {b,c} word encoded
// symbol by symbol as b -> 1 0^beta 1, c -> 1.
class Word {
 public:
  struct Encoded {
    std::shared_ptr<const PackedSymbols> word;
    std::uint64_t beta = 0;
  };
  using Token = std::variant<Run, Encoded>;

  Word() = default;
  static Word literal(std::string_view s);
  static Word encoded(std::shared_ptr<const PackedSymbols> w, std::uint64_t beta);
  static Word parse(std::string_view text);  // literals and (c^N) runs

  void append_run(char sym, std::uint64_t n);
  void append_literal(std::string_view s);
  void append(const Word& w);

  std::uint64_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  const std::vector<Token>& tokens() const { return tokens_; }

  // Maximal runs in order; symbolic tokens are expanded.
  std::vector<Run> runs() const;
  std::string expand(std::uint64_t limit = 1u << 26) const;
  std::string to_text() const;

 private:
  std::vector<Token> tokens_;
  std::uint64_t size_ = 0;
};

bool operator==(const Word& a, const Word& b);

struct Pair {
  Word r;
  Word v;
};

struct Instance {
  std::vector<Pair> pairs;
  static Instance parse(std::string_view text);
  std::string to_text() const;
};

// Binary tag system with rules b -> b and c -> body b.
struct RuleShape {
  std::uint64_t beta = 0;
  std::shared_ptr<const PackedSymbols> body;  // b = 0, c = 1

  static RuleShape from_body(std::uint64_t beta, std::string_view body);
  static RuleShape from_tag_system(const tagcore::TagSystem& sys);
  static RuleShape from_compiled(const compiler::CompiledSystem& sys);
  tagcore::TagSystem tag_system() const;
  // (body b) with its first beta-1 symbols removed.
  tagcore::Dataword input() const;
};

Instance reduce_to_pcp(const RuleShape& shape);
Instance reduce_to_pcp(const compiler::CompiledSystem& sys);

// Run list with cheap front removal.
class Surplus {
 public:
  void append(const Word& w);
  void append_runs(const std::vector<Run>& rs);
  bool starts_with(const std::vector<Run>& rs) const;
  void drop_prefix(const std::vector<Run>& rs);
  std::uint64_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  const std::deque<Run>& runs() const { return runs_; }
  std::string to_string(std::uint64_t limit = 1u << 20) const;

 private:
  std::deque<Run> runs_;
  std::uint64_t size_ = 0;
};

struct PcpConfig {
  std::vector<std::size_t> indices;
  Surplus surplus;  // v-concat minus r-concat
  std::uint64_t r_length = 0;
  std::uint64_t v_length = 0;
};

// Applies pair i; false (config untouched) if r_i is not a prefix of the surplus.
bool apply_pair(PcpConfig& cfg, const Instance& inst, std::size_t i);

// Dataword encoded by a surplus ending in 1 0^beta, or nullopt when the
// surplus is not in that form (for example mid-deletion).
std::optional<std::string> decode_surplus(const Surplus& s, std::uint64_t beta);

enum class Phase { Start, RuleDue, Deletion };
Phase phase_of(const PcpConfig& cfg, std::uint64_t beta);

struct GuidedResult {
  PcpConfig cfg;
  std::vector<std::size_t> pairs;  // pairs appended by this step
  bool matched = false;
};

// One encoded-symbol operation of the strategy that replays the tag
// computation.
GuidedResult guided_match_step(const PcpConfig& cfg, const Instance& inst, std::uint64_t beta);

enum class Choice { Guided, Inconsistent, Doomed, Viable };
const char* choice_name(Choice c);
// Sound refutation: no extension of a doomed configuration can match.
bool doomed(const Surplus& s, std::uint64_t beta);
std::vector<Choice> audit_choices(const PcpConfig& cfg, const Instance& inst, std::uint64_t beta);

enum class ReplayOutcome { Match, BudgetExhausted, TagHalted };
const char* outcome_name(ReplayOutcome o);

struct ReplayReport {
  ReplayOutcome outcome = ReplayOutcome::BudgetExhausted;
  std::uint64_t tag_steps = 0;
  std::uint64_t decoded_checks = 0;
  std::uint64_t match_length = 0;
  std::vector<std::size_t> indices;
  std::vector<std::uint64_t> dataword_lengths;
  std::uint64_t length_law_violations = 0;
  std::uint64_t probes = 0;
  std::uint64_t surviving_alternatives = 0;   // viable non-guided first pairs
  std::uint64_t unexplained_alternatives = 0; // viable ones outside the known case
  PcpConfig final_config;
};

struct ReplayOptions {
  bool probe_alternatives = false;
};

ReplayReport match_replay(const Instance& inst, const RuleShape& shape, std::uint64_t tag_steps,
                          const ReplayOptions& options = {});

enum class SolveStatus { Found, NoneWithinDepth };

struct SolveResult {
  SolveStatus status = SolveStatus::NoneWithinDepth;
  std::vector<std::size_t> indices;
  bool exhausted = false;  // no configuration left to extend at all
  std::uint64_t nodes = 0;
};

SolveResult bfs_solve(const Instance& inst, std::uint64_t max_depth,
                      std::uint64_t max_nodes = 2000000);

bool verify_solution(const Instance& inst, const std::vector<std::size_t>& indices);

}  // namespace tagpcp::pcp

#include "tagpcp/cyclic.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "tagpcp/text.hpp"

namespace tagpcp::cyclic {

void check_binary(std::string_view w, const char* what) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] != '0' && w[i] != '1')
      fail(ErrorCode::MalformedDataword, std::string(what) + " has non-binary symbol '" +
                                             std::string(1, w[i]) + "' at offset " +
                                             std::to_string(i));
}

Program::Program(std::vector<std::string> appendants) : appendants_(std::move(appendants)) {
  if (appendants_.empty()) fail(ErrorCode::InvalidArgument, "program needs at least one appendant");
  for (const auto& a : appendants_) check_binary(a, "appendant");
}

Program Program::parse(std::string_view text) {
  std::vector<std::string> apps;
  std::size_t lineno = 0;
  for (std::string_view line : text::split_lines(text)) {
    ++lineno;
    std::string_view t = text::trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t == "e") {
      apps.emplace_back();
      continue;
    }
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t[i] != '0' && t[i] != '1')
        text::parse_error(lineno, i + 1, "appendant symbols must be 0 or 1 ('e' for empty)");
    apps.emplace_back(t);
  }
  if (apps.empty()) text::parse_error(lineno, 1, "program has no appendants");
  return Program(std::move(apps));
}

std::string Program::to_text() const {
  std::string out;
  for (const auto& a : appendants_) out += (a.empty() ? "e" : a) + "\n";
  return out;
}

std::size_t Program::max_length() const {
  std::size_t r = 0;
  for (const auto& a : appendants_) r = std::max(r, a.size());
  return r;
}

bool step_in_place(Config& cfg) {
  if (cfg.dataword.empty()) return false;
  char head = cfg.dataword.front();
  if (head != '0' && head != '1')
    fail(ErrorCode::MalformedDataword, "non-binary dataword symbol");
  cfg.dataword.erase(0, 1);
  if (head == '1') cfg.dataword += cfg.program[cfg.marker];
  cfg.marker = (cfg.marker + 1) % cfg.program.size();
  return true;
}

StepResult cyclic_step(const Config& cfg) {
  if (cfg.marker >= cfg.program.size()) fail(ErrorCode::InvalidArgument, "marker out of range");
  Config next = cfg;
  if (!step_in_place(next)) return Completed{cfg};
  return next;
}

const char* run_status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Running: return "running";
    case RunStatus::Empty: return "empty";
    case RunStatus::CycleDetected: return "cycle-detected";
  }
  return "?";
}

namespace {
std::string state_key(const Config& c) { return std::to_string(c.marker) + ":" + c.dataword; }
}  // namespace

RunResult cyclic_run(Config cfg, std::uint64_t max_steps, std::size_t window) {
  check_binary(cfg.dataword, "dataword");
  if (cfg.marker >= cfg.program.size()) fail(ErrorCode::InvalidArgument, "marker out of range");
  RunResult r{std::move(cfg), 0, RunStatus::Running, 0};
  std::unordered_map<std::string, std::uint64_t> seen;
  std::deque<std::string> order;
  auto remember = [&](std::uint64_t step) {
    if (window == 0) return;
    std::string key = state_key(r.config);
    seen.emplace(key, step);
    order.push_back(std::move(key));
    if (order.size() > window) {
      seen.erase(order.front());
      order.pop_front();
    }
  };
  remember(0);
  while (true) {
    if (r.config.dataword.empty()) {
      r.status = RunStatus::Empty;
      return r;
    }
    if (r.steps >= max_steps) return r;
    step_in_place(r.config);
    ++r.steps;
    if (window > 0) {
      auto it = seen.find(state_key(r.config));
      if (it != seen.end()) {
        r.status = RunStatus::CycleDetected;
        r.cycle_start = it->second;
        return r;
      }
      remember(r.steps);
    }
  }
}

Program replicate_program(const Program& c, std::size_t q) {
  if (q < 1) fail(ErrorCode::InvalidArgument, "replication count must be at least 1");
  std::vector<std::string> apps;
  apps.reserve(c.size() * q);
  for (std::size_t i = 0; i < q; ++i)
    apps.insert(apps.end(), c.appendants().begin(), c.appendants().end());
  return Program(std::move(apps));
}

std::string interleave_zeros(std::string_view w) {
  std::string out;
  out.reserve(2 * w.size());
  for (char ch : w) {
    out.push_back(ch);
    out.push_back('0');
  }
  return out;
}

Program build_cw(const Program& c, std::string_view w) {
  if (w.empty()) fail(ErrorCode::InvalidArgument, "input word must be non-empty");
  check_binary(w, "input word");
  std::vector<std::string> apps;
  apps.push_back(interleave_zeros(w));
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (j > 0) apps.emplace_back();
    apps.push_back(interleave_zeros(c[j]));
  }
  return Program(std::move(apps));
}

std::string even_projection(std::string_view w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); i += 2) out.push_back(w[i]);
  return out;
}

}  // namespace tagpcp::cyclic

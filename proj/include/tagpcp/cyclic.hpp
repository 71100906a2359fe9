#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tagpcp/errors.hpp"

namespace tagpcp::cyclic {

// Binary words are std::string over {'0','1'}.
class Program {
 public:
  Program() = default;
  explicit Program(std::vector<std::string> appendants);

  static Program parse(std::string_view text);
  std::string to_text() const;

  std::size_t size() const { return appendants_.size(); }
  const std::string& operator[](std::size_t i) const { return appendants_.at(i); }
  const std::vector<std::string>& appendants() const { return appendants_; }
  std::size_t max_length() const;

  bool operator==(const Program& o) const { return appendants_ == o.appendants_; }

 private:
  std::vector<std::string> appendants_;
};

struct Config {
  Program program;
  std::size_t marker = 0;
  std::string dataword;

  bool operator==(const Config& o) const {
    return marker == o.marker && dataword == o.dataword && program == o.program;
  }
};

struct Completed {
  Config config;
};

using StepResult = std::variant<Config, Completed>;

void check_binary(std::string_view w, const char* what);

StepResult cyclic_step(const Config& cfg);
// In-place step; returns false when the dataword is empty.
bool step_in_place(Config& cfg);

enum class RunStatus { Running, Empty, CycleDetected };
const char* run_status_name(RunStatus s);

struct RunResult {
  Config config;
  std::uint64_t steps = 0;
  RunStatus status = RunStatus::Running;
  // For CycleDetected: step index at which the repeated configuration was
  // first seen.
  std::uint64_t cycle_start = 0;
};

RunResult cyclic_run(Config cfg, std::uint64_t max_steps, std::size_t window = 10000);

Program replicate_program(const Program& c, std::size_t q);

// sigma1 0 sigma2 0 ... sigmam 0
std::string interleave_zeros(std::string_view w);

Program build_cw(const Program& c, std::string_view w);

// Keeps positions 0, 2, 4, ... of w.
std::string even_projection(std::string_view w);

}  // namespace tagpcp::cyclic

#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace tagpcp::cli {

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);

class Manifest {
 public:
  explicit Manifest(std::string command);

  void input(const std::string& path);
  void output(const std::string& path);
  nlohmann::json& params() { return params_; }
  void set_seed(std::uint64_t s) { seed_ = s; }
  void set_exit_code(int c) { exit_code_ = c; }

  nlohmann::json to_json() const;
  // Writes to `path`, or next to the first output, or to stderr.
  void emit(const std::string& path) const;

 private:
  std::string command_;
  std::vector<std::pair<std::string, std::string>> inputs_, outputs_;
  nlohmann::json params_ = nlohmann::json::object();
  std::uint64_t seed_ = 0;
  int exit_code_ = 0;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace tagpcp::cli

#include "manifest.hpp"

#include <openssl/evp.h>

#include <iostream>

#include "tagpcp/text.hpp"

namespace tagpcp::cli {

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int n = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &n, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned i = 0; i < n; ++i) {
    s += hex[md[i] >> 4];
    s += hex[md[i] & 15];
  }
  return s;
}

std::string sha256_file(const std::string& path) { return sha256_hex(text::read_file(path)); }

Manifest::Manifest(std::string command)
    : command_(std::move(command)), start_(std::chrono::steady_clock::now()) {}

void Manifest::input(const std::string& path) { inputs_.emplace_back(path, sha256_file(path)); }

void Manifest::output(const std::string& path) { outputs_.emplace_back(path, sha256_file(path)); }

nlohmann::json Manifest::to_json() const {
  nlohmann::json j;
  j["command"] = command_;
  auto files = [](const auto& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& [p, d] : v) a.push_back({{"path", p}, {"sha256", d}});
    return a;
  };
  j["inputs"] = files(inputs_);
  j["outputs"] = files(outputs_);
  j["params"] = params_;
  j["seed"] = seed_;
  j["exit_code"] = exit_code_;
  j["elapsed_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  return j;
}

void Manifest::emit(const std::string& path) const {
  const auto j = to_json();
  std::string target = path;
  if (target.empty() && !outputs_.empty()) target = outputs_.front().first + ".manifest.json";
  if (target.empty()) {
    std::cerr << "manifest: " << j.dump() << "\n";
    return;
  }
  text::write_file(target, j.dump(2) + "\n");
}

}  // namespace tagpcp::cli

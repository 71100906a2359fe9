#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tagpcp::text {

std::vector<std::string_view> split_lines(std::string_view s);
std::string_view trim(std::string_view s);
std::vector<std::string_view> split_ws(std::string_view s);
[[noreturn]] void parse_error(std::size_t line, std::size_t column, const std::string& msg);
std::uint64_t parse_u64(std::string_view s, std::size_t line, std::size_t column);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace tagpcp::text

#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <vector>

namespace pinlab {

// Reads a whole UTF-8 text file split on '\n'; trailing '\r' stripped.
// Throws Error("FileNotFound") when the file cannot be opened.
std::vector<std::string> read_text_lines(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Shortest round-trip decimal form. Used everywhere a double lands in a
// TSV or JSON file so outputs stay byte-stable across runs.
inline std::string fmt_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v);

}  // namespace pinlab

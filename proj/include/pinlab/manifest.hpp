#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace pinlab {

inline constexpr const char* kToolVersion = "0.1.0";

// Written next to every subcommand's outputs. Deliberately carries no
// timestamps or absolute paths: two runs over the same inputs with the
// same flags produce identical manifests, and identical manifests promise
// byte-identical outputs.
struct RunManifest {
  std::string subcommand;
  std::string tool_version = kToolVersion;
  std::uint64_t seed = 0;
  // Flag snapshot, values already rendered to text.
  std::map<std::string, std::string> config;
  // Input file basename -> FNV-1a 64 digest of its bytes.
  std::map<std::string, std::string> inputs;
  // Basenames of the files the run wrote (manifest excluded).
  std::vector<std::string> outputs;

  bool operator==(const RunManifest&) const = default;
};

std::string manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const std::string& text);

// FNV-1a 64 of the file's bytes, rendered as 16 hex digits.
std::string file_digest(const std::string& path);

std::string basename_of(const std::string& path);

// Serializes to "<subcommand>.manifest.json" inside out_dir.
void write_manifest(const RunManifest& manifest, const std::string& out_dir);

}  // namespace pinlab

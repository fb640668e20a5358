#include "pinlab/manifest.hpp"

#include <filesystem>

#include "json.hpp"
#include "pinlab/errors.hpp"
#include "pinlab/textio.hpp"

namespace pinlab {

using nlohmann::json;

std::string manifest_to_json(const RunManifest& manifest) {
  json j;
  j["subcommand"] = manifest.subcommand;
  j["tool_version"] = manifest.tool_version;
  j["seed"] = manifest.seed;
  j["config"] = manifest.config;
  j["inputs"] = manifest.inputs;
  j["outputs"] = manifest.outputs;
  return j.dump(2) + "\n";
}

RunManifest manifest_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error("SchemaMismatch", "manifest is not a JSON object");
  }
  RunManifest m;
  try {
    m.subcommand = j.at("subcommand").get<std::string>();
    m.tool_version = j.at("tool_version").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.config = j.at("config").get<std::map<std::string, std::string>>();
    m.inputs = j.at("inputs").get<std::map<std::string, std::string>>();
    m.outputs = j.at("outputs").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw Error("SchemaMismatch", e.what());
  }
  return m;
}

std::string file_digest(const std::string& path) {
  return hex64(fnv1a64(read_text_file(path)));
}

std::string basename_of(const std::string& path) {
  return std::filesystem::path(path).filename().string();
}

void write_manifest(const RunManifest& manifest, const std::string& out_dir) {
  const auto path =
      std::filesystem::path(out_dir) / (manifest.subcommand + ".manifest.json");
  write_text_file(path.string(), manifest_to_json(manifest));
}

}  // namespace pinlab

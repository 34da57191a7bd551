#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cantor::cli {

/// Provenance written next to every output file as `<out>.manifest.json`.
struct RunManifest {
  std::string command;
  std::vector<std::string> args;
  std::optional<std::uint64_t> seed;
  std::string tool_version;
  std::map<std::string, std::string> input_hashes;  // path -> sha256 hex
  double wall_seconds = 0;
  bool complete = true;

  void add_input(const std::filesystem::path& path);
  std::string to_json() const;
  void write_for(const std::filesystem::path& output) const;
};

std::string sha256_file(const std::filesystem::path& path);

}  // namespace cantor::cli

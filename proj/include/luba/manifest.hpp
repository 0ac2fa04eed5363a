#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace luba {

inline constexpr const char* kToolVersion = "0.1.0";

/// Reproducibility sidecar written next to every output file: the command,
/// its fully resolved parameters, the seed, and digests of every input file.
/// Re-running the same command with the same parameters reproduces the output
/// byte for byte.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;  // sorted by key
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
  std::vector<std::pair<std::string, std::string>> input_digests;  // path -> digest

  void add_parameter(const std::string& key, const std::string& value);
  void add_input(const std::string& path);  // digests the file contents

  std::string to_json() const;
  /// Writes `<output_path>.manifest.json`.
  void write_alongside(const std::string& output_path) const;
};

std::string fnv1a64_hex(std::string_view bytes);
std::string digest_file(const std::string& path);  // "fnv1a64:<hex>"

}  // namespace luba

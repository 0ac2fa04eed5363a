#include "luba/manifest.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace luba {

void RunManifest::add_parameter(const std::string& key, const std::string& value) {
  parameters.emplace_back(key, value);
}

void RunManifest::add_input(const std::string& path) {
  input_digests.emplace_back(path, digest_file(path));
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::vector<std::pair<std::string, std::string>> sorted = parameters;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& [key, value] : sorted) params[key] = value;
  j["parameters"] = std::move(params);
  j["seed"] = seed;
  j["tool_version"] = tool_version;
  nlohmann::ordered_json digests = nlohmann::ordered_json::array();
  for (const auto& [path, digest] : input_digests) {
    nlohmann::ordered_json entry;
    entry["path"] = path;
    entry["digest"] = digest;
    digests.push_back(std::move(entry));
  }
  j["input_digests"] = std::move(digests);
  return j.dump(2) + "\n";
}

void RunManifest::write_alongside(const std::string& output_path) const {
  const std::string manifest_path = output_path + ".manifest.json";
  std::ofstream out(manifest_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write manifest: " + manifest_path);
  out << to_json();
}

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string digest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input for digest: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return "fnv1a64:" + fnv1a64_hex(ss.str());
}

}  // namespace luba

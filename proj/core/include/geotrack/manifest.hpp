#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace geotrack {

std::string sha256_hex(std::string_view bytes);
std::string sha256_hex_file(const std::string& path);

/// Reproducibility record emitted next to every CLI output: tool version,
/// content digests of inputs and outputs, the fully resolved configuration,
/// and wall-clock timing (the one field excluded from byte-identity
/// comparisons).
struct RunManifest {
  std::string tool = "geotrack";
  std::string version;
  std::string command;
  std::map<std::string, std::string> input_digests;   // path -> sha256
  std::map<std::string, std::string> output_digests;  // path -> sha256
  std::string config_json;                            // flat resolved config
  std::uint64_t seed = 0;
  int jobs = 1;
  double timing_ms = 0.0;
};

std::string manifest_json(const RunManifest& m);

}  // namespace geotrack

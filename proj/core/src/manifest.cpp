#include "geotrack/manifest.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

#include <nlohmann/json.hpp>

namespace geotrack {
namespace {

struct DigestContext {
  EVP_MD_CTX* ctx = nullptr;
  DigestContext() : ctx(EVP_MD_CTX_new()) {
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
      throw std::runtime_error("sha256: failed to initialize digest");
    }
  }
  ~DigestContext() { EVP_MD_CTX_free(ctx); }

  void update(const void* data, std::size_t len) {
    if (EVP_DigestUpdate(ctx, data, len) != 1) {
      throw std::runtime_error("sha256: digest update failed");
    }
  }

  std::string hex() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> out{};
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(ctx, out.data(), &len) != 1) {
      throw std::runtime_error("sha256: digest finalization failed");
    }
    static const char* digits = "0123456789abcdef";
    std::string hex;
    hex.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
      hex.push_back(digits[out[i] >> 4]);
      hex.push_back(digits[out[i] & 0xF]);
    }
    return hex;
  }
};

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  DigestContext d;
  d.update(bytes.data(), bytes.size());
  return d.hex();
}

std::string sha256_hex_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("sha256: cannot open " + path);
  DigestContext d;
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    d.update(buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  return d.hex();
}

std::string manifest_json(const RunManifest& m) {
  nlohmann::ordered_json doc;
  doc["tool"] = m.tool;
  doc["version"] = m.version;
  doc["command"] = m.command;
  doc["inputs"] = m.input_digests;
  doc["outputs"] = m.output_digests;
  doc["config"] = nlohmann::ordered_json::parse(
      m.config_json.empty() ? std::string("{}") : m.config_json);
  doc["seed"] = m.seed;
  doc["jobs"] = m.jobs;
  doc["timing_ms"] = m.timing_ms;
  return doc.dump(2) + "\n";
}

}  // namespace geotrack

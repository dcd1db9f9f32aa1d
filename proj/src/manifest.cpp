#include "qidm/manifest.hpp"

#include <cstdio>

#include "qidm/version.hpp"

namespace qidm {

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

RunManifest make_manifest(const std::vector<std::string>& command_line,
                          const std::string& backend, std::uint64_t seed) {
  RunManifest m;
  m.command_line = command_line;
  m.backend = backend;
  m.seed = seed;
  m.tool_version = QIDM_VERSION;
  std::string canon = backend + "|" + std::to_string(seed);
  for (const auto& arg : command_line) canon += "|" + arg;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canon)));
  m.config_hash = buf;
  return m;
}

Json manifest_to_json(const RunManifest& m) {
  Json j;
  j["command_line"] = m.command_line;
  j["config_hash"] = m.config_hash;
  j["backend"] = m.backend;
  j["seed"] = m.seed;
  j["tool_version"] = m.tool_version;
  Json res = Json::object();
  for (const auto& [k, v] : m.residuals) res[k] = v;
  j["residuals"] = std::move(res);
  return j;
}

}  // namespace qidm

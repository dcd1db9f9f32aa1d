#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qidm/json_io.hpp"

namespace qidm {

// Reproducibility record written next to every CLI run's outputs. Holds no
// timestamps: identical inputs produce byte-identical manifests, which is
// what makes rational-mode runs diffable.
struct RunManifest {
  std::vector<std::string> command_line;
  std::string config_hash;
  std::string backend;
  std::uint64_t seed = 0;
  std::string tool_version;
  std::map<std::string, std::string> residuals;
};

std::uint64_t fnv1a64(const std::string& data);

RunManifest make_manifest(const std::vector<std::string>& command_line,
                          const std::string& backend, std::uint64_t seed);

Json manifest_to_json(const RunManifest& m);

}  // namespace qidm

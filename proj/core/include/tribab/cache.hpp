#pragma once

// On-disk artifact cache for the pipeline: one file per artifact plus a
// JSON manifest with content digests.

#include <filesystem>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tribab/pipeline.hpp"

namespace tribab {

inline constexpr const char* kBuilderVersion = "tribab-0.1.0";
inline constexpr const char* kStateConvention =
    "minimized complete automaton; the dead state is counted when reachable "
    "(live = total minus the dead state)";

class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ManifestEntry {
  std::string stage;
  std::string path;    ///< relative to the cache directory
  std::string digest;  ///< FNV-1a 64, hex
  std::string kind;    ///< relation, dfao or json
  std::vector<std::string> vars;
  std::size_t states = 0;
  std::size_t live_states = 0;
};

struct Manifest {
  std::string builder_version;
  std::string convention;
  std::map<std::string, ManifestEntry> artifacts;
};

std::string fnv1a_hex(std::string_view data);

/// $TRIB_CACHE_DIR, else ./cache.
std::filesystem::path default_cache_dir();

Manifest read_manifest(const std::filesystem::path& dir);
void write_manifest(const std::filesystem::path& dir, const Manifest& m);

struct BuildReport {
  std::vector<std::string> rebuilt;  ///< stage names, in order
  ArtifactMap artifacts;
  Manifest manifest;
};

/// Reuse every stage whose files match their digests and whose dependencies
/// were not rebuilt; rebuild the rest.
BuildReport build_cache(const std::filesystem::path& dir, bool force, std::ostream* log = nullptr);

/// Serialized file contents for one artifact.
std::string serialize_artifact(const Artifact& a);
Artifact load_artifact(const std::filesystem::path& dir, const ManifestEntry& e);

}  // namespace tribab

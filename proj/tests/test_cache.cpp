#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "support.hpp"
#include "tribab/cache.hpp"
#include "tribab/text_format.hpp"

using namespace tribab;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("tribab_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("digest") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("default directory") {
  ::setenv("TRIB_CACHE_DIR", "/tmp/somewhere", 1);
  CHECK(default_cache_dir() == fs::path("/tmp/somewhere"));
  ::unsetenv("TRIB_CACHE_DIR");
  CHECK(default_cache_dir() == fs::path("cache"));
}

TEST_CASE("build, reuse and partial rebuild") {
  const fs::path dir = fresh_dir("cache");
  const BuildReport first = build_cache(dir, false);
  CHECK(first.rebuilt.size() == pipeline_stages().size());
  CHECK(first.manifest.artifacts.size() >= 20);
  CHECK(first.manifest.artifacts.count("TRAS"));
  CHECK(first.manifest.artifacts.count("TRAC"));
  CHECK(first.manifest.artifacts.at("subseteq").live_states == 5251);

  const BuildReport second = build_cache(dir, false);
  CHECK(second.rebuilt.empty());
  CHECK(isomorphic(get_dfao(second.artifacts, "TRAC"), get_dfao(first.artifacts, "TRAC")));

  // Corrupt one predicate: its stage and everything after rebuild.
  const auto& e = second.manifest.artifacts.at("t000");
  std::ofstream(dir / e.path, std::ios::app) << "\n";
  const BuildReport third = build_cache(dir, false);
  CHECK(third.rebuilt == std::vector<std::string>{"predicates", "subseteq", "classes", "dfaos"});

  fs::remove(dir / second.manifest.artifacts.at("TRAC").path);
  CHECK(build_cache(dir, false).rebuilt == std::vector<std::string>{"dfaos"});
  CHECK(build_cache(dir, true).rebuilt.size() == pipeline_stages().size());
  fs::remove_all(dir);
}

TEST_CASE("every cached artifact round-trips byte for byte") {
  const fs::path dir = fresh_dir("roundtrip");
  const BuildReport r = build_cache(dir, false);
  for (const auto& [name, e] : r.manifest.artifacts) {
    const Artifact loaded = load_artifact(dir, e);
    CHECK_MESSAGE(serialize_artifact(loaded) == serialize_artifact(r.artifacts.at(name)), name);
  }
  fs::remove_all(dir);
}

TEST_CASE("manifest errors") {
  const fs::path dir = fresh_dir("bad");
  fs::create_directories(dir);
  CHECK_THROWS_AS(read_manifest(dir), CacheError);
  std::ofstream(dir / "manifest.json") << "{not json";
  CHECK_THROWS_AS(read_manifest(dir), CacheError);
  fs::remove_all(dir);
}

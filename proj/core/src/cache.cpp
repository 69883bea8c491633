#include "tribab/cache.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tribab/text_format.hpp"

namespace tribab {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

fs::path default_cache_dir() {
  if (const char* env = std::getenv("TRIB_CACHE_DIR"); env && *env) return env;
  return "cache";
}

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw CacheError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw CacheError("cannot write " + p.string());
  out << text;
  if (!out) throw CacheError("write failed for " + p.string());
}

const char* kind_of(const Artifact& a) {
  if (std::holds_alternative<Relation>(a)) return "relation";
  if (std::holds_alternative<Dfao>(a)) return "dfao";
  return "json";
}

ManifestEntry entry_for(const std::string& stage, const std::string& name, const Artifact& a,
                        const std::string& text) {
  ManifestEntry e;
  e.stage = stage;
  e.kind = kind_of(a);
  e.path = name + (e.kind == "json" ? ".json" : ".txt");
  e.digest = fnv1a_hex(text);
  if (const auto* r = std::get_if<Relation>(&a)) {
    e.vars = r->vars();
    const StateCounts c = state_counts(r->automaton());
    e.states = c.total;
    e.live_states = c.without_dead;
  } else if (const auto* d = std::get_if<Dfao>(&a)) {
    e.states = d->state_count();
    e.live_states = e.states;
    for (int v : d->outputs()) e.live_states -= (v == kDeadOutput);
  }
  return e;
}

bool entry_fresh(const fs::path& dir, const ManifestEntry& e) {
  std::error_code ec;
  if (!fs::is_regular_file(dir / e.path, ec)) return false;
  try {
    return fnv1a_hex(read_file(dir / e.path)) == e.digest;
  } catch (const CacheError&) {
    return false;
  }
}

}  // namespace

Manifest read_manifest(const fs::path& dir) {
  const fs::path p = dir / "manifest.json";
  if (!fs::exists(p)) throw CacheError("no manifest in " + dir.string() + "; run `tribab build`");
  json j;
  try {
    j = json::parse(read_file(p));
  } catch (const json::exception& e) {
    throw CacheError("corrupt manifest: " + std::string(e.what()));
  }
  Manifest m;
  m.builder_version = j.value("builder_version", "");
  m.convention = j.value("convention", "");
  for (const auto& [name, e] : j.at("artifacts").items()) {
    m.artifacts[name] = {e.at("stage"), e.at("path"), e.at("digest"), e.at("kind"),
                         e.at("vars").get<std::vector<std::string>>(), e.at("states"),
                         e.at("live_states")};
  }
  return m;
}

void write_manifest(const fs::path& dir, const Manifest& m) {
  json arts = json::object();
  for (const auto& [name, e] : m.artifacts) {
    arts[name] = {{"stage", e.stage}, {"path", e.path}, {"digest", e.digest}, {"kind", e.kind},
                  {"vars", e.vars}, {"states", e.states}, {"live_states", e.live_states}};
  }
  json j{{"builder_version", m.builder_version}, {"convention", m.convention}, {"artifacts", arts}};
  write_file(dir / "manifest.json", j.dump(2) + "\n");
}

std::string serialize_artifact(const Artifact& a) {
  if (const auto* r = std::get_if<Relation>(&a)) return to_walnut(r->automaton());
  if (const auto* d = std::get_if<Dfao>(&a)) return to_walnut(*d);
  return std::get<JsonDoc>(a).text;
}

Artifact load_artifact(const fs::path& dir, const ManifestEntry& e) {
  const std::string text = read_file(dir / e.path);
  try {
    if (e.kind == "relation") return Relation(automaton_from_walnut(text), e.vars);
    if (e.kind == "dfao") return dfao_from_walnut(text);
    if (e.kind == "json") return JsonDoc{text};
  } catch (const std::exception& ex) {
    throw CacheError(e.path + ": " + ex.what());
  }
  throw CacheError(e.path + ": unknown kind '" + e.kind + "'");
}

BuildReport build_cache(const fs::path& dir, bool force, std::ostream* log) {
  fs::create_directories(dir);
  Manifest old;
  try {
    old = read_manifest(dir);
  } catch (const CacheError&) {
    force = true;
  }
  if (old.builder_version != kBuilderVersion) force = true;

  BuildReport report;
  report.manifest.builder_version = kBuilderVersion;
  report.manifest.convention = kStateConvention;
  std::set<std::string> rebuilt;
  for (const Stage& stage : pipeline_stages()) {
    bool fresh = !force;
    for (const auto& d : stage.deps) fresh = fresh && !rebuilt.count(d);
    std::vector<std::pair<std::string, ManifestEntry>> entries;
    for (const auto& [name, e] : old.artifacts) {
      if (e.stage == stage.name) entries.emplace_back(name, e);
    }
    fresh = fresh && !entries.empty();
    for (const auto& [name, e] : entries) fresh = fresh && entry_fresh(dir, e);

    if (fresh) {
      try {
        for (const auto& [name, e] : entries) {
          report.artifacts.insert_or_assign(name, load_artifact(dir, e));
          report.manifest.artifacts[name] = e;
        }
      } catch (const CacheError&) {
        fresh = false;
      }
    }
    if (fresh) {
      if (log) *log << "stage " << stage.name << ": up to date\n";
      continue;
    }

    const auto t0 = std::chrono::steady_clock::now();
    ArtifactMap produced;
    try {
      produced = stage.build(report.artifacts);
    } catch (const PipelineError&) {
      throw;
    } catch (const std::exception& ex) {
      throw PipelineError(stage.name, ex.what());
    }
    for (auto it = report.manifest.artifacts.begin(); it != report.manifest.artifacts.end();) {
      it = it->second.stage == stage.name ? report.manifest.artifacts.erase(it) : std::next(it);
    }
    for (auto& [name, art] : produced) {
      const std::string text = serialize_artifact(art);
      ManifestEntry e = entry_for(stage.name, name, art, text);
      write_file(dir / e.path, text);
      report.manifest.artifacts[name] = std::move(e);
      report.artifacts.insert_or_assign(name, std::move(art));
    }
    rebuilt.insert(stage.name);
    report.rebuilt.push_back(stage.name);
    write_manifest(dir, report.manifest);
    if (log) {
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      *log << "stage " << stage.name << ": built " << produced.size() << " artifacts in " << secs
           << " s\n";
    }
  }
  write_manifest(dir, report.manifest);
  return report;
}

}  // namespace tribab

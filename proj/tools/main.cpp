// tribab: build, query and verify the abelian-complexity automata.

#include <chrono>
#include <fstream>
#include <iostream>
#include <set>

#include "CLI11.hpp"
#include "tribab/cache.hpp"
#include "tribab/formula.hpp"
#include "tribab/numeration.hpp"
#include "tribab/oracle.hpp"
#include "tribab/pipeline.hpp"
#include "tribab/text_format.hpp"
#include "tribab/word_dfao.hpp"

namespace fs = std::filesystem;
using namespace tribab;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kUsage = 2, kAbort = 3 };

BuildReport load(const fs::path& dir) {
  if (!fs::exists(dir / "manifest.json")) std::cerr << "cache " << dir << " is empty; building\n";
  return build_cache(dir, false, nullptr);
}

int cmd_build(const fs::path& dir, bool force) {
  const auto t0 = std::chrono::steady_clock::now();
  BuildReport r = build_cache(dir, force, &std::cout);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << r.manifest.artifacts.size() << " artifacts in " << dir.string() << ", "
            << r.rebuilt.size() << " stages rebuilt, " << secs << " s\n";
  return kOk;
}

int cmd_eval(const fs::path& dir, const std::string& kind, std::uint64_t n) {
  BuildReport r = load(dir);
  if (kind == "rho") {
    std::cout << eval(get_dfao(r.artifacts, "TRAC"), n) << '\n';
    return kOk;
  }
  const int rep = eval(get_dfao(r.artifacts, "TRAS"), n);
  if (kind == "tau1") {
    std::cout << rep << '\n';
    return kOk;
  }
  const ClassTable table = class_table_from_json(get_json(r.artifacts, "classes"));
  for (const auto& row : table.rows) {
    if (row.min_index == static_cast<std::uint64_t>(rep)) {
      std::cout << row.subset.to_string(table.range) << '\n';
      return kOk;
    }
  }
  std::cerr << "no class with representative " << rep << '\n';
  return kAbort;
}

std::string subset_string(const std::vector<RelativeVector>& v) {
  std::string out = "{";
  for (std::size_t j = 0; j < v.size(); ++j) out += (j ? "," : "") + v[j].to_string();
  return out + "}";
}

int cmd_verify(const fs::path& dir, std::size_t max_n, std::size_t window, const std::string& csv) {
  BuildReport r = load(dir);
  const Dfao& trac = get_dfao(r.artifacts, "TRAC");
  const Dfao& tras = get_dfao(r.artifacts, "TRAS");
  const ClassTable table = class_table_from_json(get_json(r.artifacts, "classes"));
  std::map<int, std::vector<RelativeVector>> subsets;
  for (const auto& row : table.rows) subsets[static_cast<int>(row.min_index)] = row.subset.vectors(table.range);

  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t len = window ? max_n + window + 2 : TribOracle::sweep_length(max_n);
  const TribOracle oracle(len);
  std::vector<std::vector<RelativeVector>> sets =
      window ? std::vector<std::vector<RelativeVector>>{} : oracle.sweep(max_n);
  if (window) {
    for (std::size_t n = 0; n <= max_n; ++n) sets.push_back(oracle.relative_set(n, window));
  }
  std::vector<std::size_t> bad;
  std::set<int> seen;
  for (std::size_t n = 0; n <= max_n; ++n) {
    const int rho = eval(trac, n);
    seen.insert(rho);
    auto it = subsets.find(eval(tras, n));
    const bool ok = rho == static_cast<int>(sets[n].size()) && it != subsets.end() && it->second == sets[n];
    if (!ok) bad.push_back(n);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!csv.empty()) {
    std::ofstream out(csv);
    write_complexity_csv(out, sets);
  }
  std::cout << "checked n = 0.." << max_n << ": " << bad.size() << " mismatches, " << secs << " s\n";
  std::cout << "values:";
  for (int v : seen) std::cout << ' ' << v;
  std::cout << '\n';
  for (std::size_t j = 0; j < std::min<std::size_t>(bad.size(), 10); ++j) {
    const std::size_t n = bad[j];
    std::cout << "mismatch n=" << n << ": automaton " << eval(trac, n) << ", oracle " << sets[n].size()
              << ' ' << subset_string(sets[n]) << '\n';
  }
  return bad.empty() ? kOk : kMismatch;
}

void print_relation(const std::string& label, const Relation& rel) {
  if (rel.arity() == 0) {
    std::cout << label << (rel.holds() ? "true" : "false") << '\n';
    return;
  }
  const StateCounts c = state_counts(rel.automaton());
  std::cout << label << c.without_dead << " states (" << c.total << " with dead state), ";
  if (is_empty(rel)) {
    std::cout << "empty\n";
    return;
  }
  std::cout << "nonempty\n";
  for (const auto& t : sample_values(rel, 10)) {
    std::cout << "  ";
    for (std::size_t j = 0; j < t.size(); ++j) std::cout << (j ? " " : "") << rel.vars()[j] << '=' << t[j];
    std::cout << '\n';
  }
}

int cmd_query(const fs::path& dir, const std::string& text) {
  BuildReport r = load(dir);
  Env env = env_from_artifacts(r.artifacts);
  for (const auto& st : parse_script(text)) {
    Relation rel = compile(st.formula, env);
    print_relation(st.name.empty() ? "" : st.name + ": ", rel);
    if (st.kind == Statement::Kind::Def) env.relations[st.name] = std::move(rel);
  }
  return kOk;
}

int cmd_export(const fs::path& dir, const std::string& name, const std::string& format,
               const std::string& output) {
  BuildReport r = load(dir);
  auto it = r.artifacts.find(name);
  if (it == r.artifacts.end()) {
    std::cerr << "unknown artifact '" << name << "'; the manifest lists:\n";
    for (const auto& [n, e] : r.manifest.artifacts) std::cerr << "  " << n << " (" << e.kind << ")\n";
    return kUsage;
  }
  std::string text;
  if (const auto* rel = std::get_if<Relation>(&it->second)) {
    if (format == "walnut") text = to_walnut(rel->automaton());
    if (format == "dot") text = to_dot(rel->automaton(), name);
    if (format == "json") text = to_json(rel->automaton(), &rel->vars()) + "\n";
  } else if (const auto* d = std::get_if<Dfao>(&it->second)) {
    if (format == "walnut") text = to_walnut(*d);
    if (format == "dot") text = to_dot(*d, name);
    if (format == "json") text = to_json(*d) + "\n";
  } else {
    if (format != "json") {
      std::cerr << name << " is a JSON document; use --format json\n";
      return kUsage;
    }
    text = std::get<JsonDoc>(it->second).text + "\n";
  }
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream(output, std::ios::binary) << text;
  }
  return kOk;
}

int cmd_stats(const fs::path& dir) {
  BuildReport r = load(dir);
  std::cout << "convention: " << r.manifest.convention << '\n';
  std::printf("%-14s %-9s %-14s %8s %8s\n", "artifact", "kind", "vars", "states", "live");
  for (const auto& [name, e] : r.manifest.artifacts) {
    if (e.kind == "json") continue;
    std::string vars;
    for (const auto& v : e.vars) vars += (vars.empty() ? "" : ",") + v;
    std::printf("%-14s %-9s %-14s %8zu %8zu\n", name.c_str(), e.kind.c_str(), vars.c_str(), e.states,
                e.live_states);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tribonacci abelian complexity automata"};
  app.require_subcommand(1);
  std::string cache_dir = default_cache_dir().string();

  auto* build = app.add_subcommand("build", "build and cache every pipeline artifact");
  bool force = false;
  build->add_option("--out-dir", cache_dir, "cache directory");
  build->add_flag("--force", force, "rebuild every stage");

  auto* ev = app.add_subcommand("eval", "evaluate rho(n), A_n or tau1(n)");
  std::string kind;
  std::uint64_t n = 0;
  ev->add_option("kind", kind)->required()->check(CLI::IsMember({"rho", "set", "tau1"}));
  ev->add_option("n", n)->required();

  auto* verify = app.add_subcommand("verify", "compare the DFAOs against direct counting");
  std::size_t max_n = 100000, window = 0;
  std::string csv;
  verify->add_option("--max-n", max_n, "largest n checked");
  verify->add_option("--window", window, "fixed start-index window (default 12n+64)");
  verify->add_option("--csv", csv, "write n,complexity,subset rows here");

  auto* query = app.add_subcommand("query", "compile def/eval statements or a bare formula");
  std::string text;
  query->add_option("text", text)->required();

  auto* exp = app.add_subcommand("export", "print an artifact");
  std::string name, format = "walnut", output;
  exp->add_option("name", name)->required();
  exp->add_option("--format", format)->check(CLI::IsMember({"walnut", "dot", "json"}));
  exp->add_option("-o,--output", output, "write to a file instead of stdout");

  auto* stats = app.add_subcommand("stats", "state counts of cached artifacts");

  for (auto* sub : {ev, verify, query, exp, stats}) sub->add_option("--cache-dir", cache_dir, "cache directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*build) return cmd_build(cache_dir, force);
    if (*ev) return cmd_eval(cache_dir, kind, n);
    if (*verify) return cmd_verify(cache_dir, max_n, window, csv);
    if (*query) return cmd_query(cache_dir, text);
    if (*exp) return cmd_export(cache_dir, name, format, output);
    if (*stats) return cmd_stats(cache_dir);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const CompileError& e) {
    std::cerr << "compile error: " << e.what() << '\n';
    return kUsage;
  } catch (const PipelineError& e) {
    std::cerr << "pipeline aborted in stage " << e.stage() << ": " << e.what() << '\n';
    return kAbort;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kAbort;
  }
  return kOk;
}

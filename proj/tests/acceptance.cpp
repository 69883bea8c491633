// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failing criteria.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "support.hpp"
#include "tribab/formula.hpp"
#include "tribab/numeration.hpp"
#include "tribab/oracle.hpp"
#include "tribab/pipeline.hpp"
#include "tribab/word_dfao.hpp"

using namespace tribab;

namespace {

struct Result {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* what, const std::function<Result()>& check) {
  const auto t0 = std::chrono::steady_clock::now();
  Result r;
  try {
    r = check();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  failures += !r.pass;
  std::printf("criterion %2d %s: %s (%s; %.1f s)\n", id, r.pass ? "PASS" : "FAIL", what, r.detail.c_str(),
              secs);
  std::fflush(stdout);
}

std::string join(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  const ArtifactMap& art = testing::artifacts();
  const double build_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const Dfao& trac = get_dfao(art, "TRAC");
  const Dfao& tras = get_dfao(art, "TRAS");
  const ClassTable table = class_table_from_json(get_json(art, "classes"));
  constexpr std::size_t kMaxN = 100000;

  criterion(1, "TRAC equals direct abelian complexity for n <= 100000", [&]() -> Result {
    const TribOracle o(TribOracle::sweep_length(kMaxN));
    const auto sets = o.sweep(kMaxN);
    std::map<int, SubsetOfA> by_rep;
    for (const auto& row : table.rows) by_rep[static_cast<int>(row.min_index)] = row.subset;
    std::size_t bad = 0, bad_sets = 0, first = 0;
    for (std::size_t n = 0; n <= kMaxN; ++n) {
      if (eval(trac, n) != static_cast<int>(sets[n].size())) {
        if (!bad++) first = n;
      }
      auto it = by_rep.find(eval(tras, n));
      if (it == by_rep.end() || it->second.vectors(table.range) != sets[n]) ++bad_sets;
    }
    return {bad == 0 && bad_sets == 0, std::to_string(bad) + " complexity mismatches, " +
                                           std::to_string(bad_sets) + " subset mismatches" +
                                           (bad ? ", first at n=" + std::to_string(first) : "")};
  });

  criterion(2, "TRAC values lie in {3,...,7} for n >= 1", [&]() -> Result {
    std::set<int> seen;
    for (std::size_t n = 1; n <= kMaxN; ++n) seen.insert(eval(trac, n));
    std::set<int> reachable(trac.outputs().begin(), trac.outputs().end());
    const std::set<int> allowed_values{3, 4, 5, 6, 7}, allowed_outputs{-1, 1, 3, 4, 5, 6, 7};
    bool ok = std::includes(allowed_values.begin(), allowed_values.end(), seen.begin(), seen.end());
    ok = ok && std::includes(allowed_outputs.begin(), allowed_outputs.end(), reachable.begin(), reachable.end());
    std::string d = "values seen:";
    for (int v : seen) d += " " + std::to_string(v);
    d += "; state outputs:";
    for (int v : reachable) d += " " + std::to_string(v);
    return {ok, d};
  });

  criterion(3, "TRAC is isomorphic to the transcribed 78-state table", [&]() -> Result {
    const Dfao want = testing::transcribed_dfao(true);
    const bool iso = isomorphic(trac, want);
    const bool iso1 = isomorphic(tras, testing::transcribed_dfao(false));
    return {iso && want.state_count() == 78,
            std::to_string(trac.state_count()) + " states including the dead state; tau1 column " +
                (iso1 ? "also isomorphic" : "NOT isomorphic")};
  });

  criterion(4, "the range set has exactly the nine vectors of A", [&]() -> Result {
    const RangeSetA a = range_set_from_json(get_json(art, "A"));
    RangeSetA want{{0, 0, 0},  {1, 0, -1}, {1, -1, 0},  {0, 1, -1}, {-1, 2, -1},
                   {-1, 1, 0}, {0, -1, 1}, {-1, 0, 1}, {-1, -1, 2}};
    std::sort(want.begin(), want.end());
    std::string d;
    for (const auto& v : a) d += v.to_string();
    return {a == want, std::to_string(a.size()) + " vectors " + d};
  });

  criterion(5, "subset discovery yields the 26 published classes", [&]() -> Result {
    std::ifstream in(TRIBAB_TEST_DATA "/subsets.txt");
    std::vector<std::pair<std::uint64_t, std::string>> want;
    for (std::string line; std::getline(in, line);) {
      std::istringstream ls(line);
      std::uint64_t n;
      std::string s;
      ls >> n >> s;
      want.emplace_back(n, s);
    }
    std::vector<std::uint64_t> got;
    bool ok = table.rows.size() == want.size() && want.size() == 26;
    for (std::size_t j = 0; j < table.rows.size(); ++j) {
      got.push_back(table.rows[j].min_index);
      ok = ok && j < want.size() && table.rows[j].min_index == want[j].first &&
           table.rows[j].subset.to_string(table.range) == want[j].second;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "; pipeline built in %.1f s", build_secs);
    return {ok && build_secs < 600, std::to_string(got.size()) + " rows: " + join(got) + buf};
  });

  criterion(6, "state counts 239/283/406, predicates 101, subset equivalence 5251", [&]() -> Result {
    bool ok = true;
    std::string d;
    auto check = [&](const std::string& name, std::size_t want) {
      const StateCounts c = state_counts(get_relation(art, name).automaton());
      ok = ok && c.without_dead == want;
      if (c.without_dead != want || name.rfind("tribfac", 0) == 0 || name == "subseteq" || name == "t000") {
        d += name + "=" + std::to_string(c.without_dead) + "+" + std::to_string(c.total - c.without_dead) + " ";
      }
    };
    check("tribfac0", 239);
    check("tribfac1", 283);
    check("tribfac2", 406);
    for (const auto& v : range_set_from_json(get_json(art, "A"))) check(triple_name(v), 101);
    check("subseteq", 5251);
    return {ok, d + "(live states + reachable dead state)"};
  });

  criterion(7, "missing automaton over 25 representatives accepts only 10011000000000", [&]() -> Result {
    Env env = env_from_artifacts(art);
    std::vector<std::uint64_t> reps;
    for (std::size_t j = 0; j + 1 < table.rows.size(); ++j) reps.push_back(table.rows[j].min_index);
    env.relations["last"] = compile(last_formula(reps), env);
    const Relation missing = compile(missing_formula(), env);
    auto words = canonical_words(missing.automaton(), 10);
    if (!words) return {false, "infinitely many or more than 10 words"};
    std::string d = std::to_string(words->size()) + " canonical word(s):";
    for (const auto& w : *words) d += " " + format_word(w, 1);
    const bool ok = reps.size() == 25 && words->size() == 1 &&
                    format_word(words->front(), 1) == "10011000000000" && from_trib("10011000000000") == 3914;
    return {ok, d};
  });

  criterion(8, "each complexity 3..7 and each nonzero class occurs infinitely often", [&]() -> Result {
    bool ok = true;
    std::string d;
    for (int v = 3; v <= 7; ++v) {
      const bool inf = check_infinitude(trac, v);
      ok = ok && inf;
      if (!inf) d += "value " + std::to_string(v) + " finite; ";
    }
    Env env = env_from_artifacts(art);
    const bool test4 = compile("?msd_trib An Em (m>n) & TRAC[m]=@4", env).holds();
    ok = ok && test4;
    std::size_t inf_rows = 0;
    for (const auto& row : table.rows) {
      const bool inf = check_subset_infinitude(tras, row);
      inf_rows += inf;
      ok = ok && inf == (row.min_index != 0);
    }
    return {ok, d + "test4 " + (test4 ? "true" : "false") + ", " + std::to_string(inf_rows) + "/" +
                    std::to_string(table.rows.size()) + " classes infinite"};
  });

  criterion(9, "every f(i,n) with i,n <= 5000 is in the 2-balance box", [&]() -> Result {
    const TribOracle o(10002);
    std::size_t outside = 0;
    for (std::size_t n = 0; n <= 5000; ++n) {
      const ParikhVector p = o.prefix_parikh(n);
      for (std::size_t i = 0; i <= 5000; ++i) {
        const RelativeVector f = o.factor_parikh(i, n) - p;
        outside += f.d0 < -1 || f.d0 > 1 || f.d1 < -1 || f.d1 > 2 || f.d2 < -1 || f.d2 > 2;
      }
    }
    return {outside == 0, std::to_string(outside) + " vectors outside"};
  });

  criterion(10, "adder agrees with integer addition", [&]() -> Result {
    const auto start = std::chrono::steady_clock::now();
    const Automaton add = build_adder();
    std::size_t bad = 0;
    std::vector<std::uint64_t> v(3);
    for (std::uint64_t y = 0; y <= 3000; ++y) {
      for (std::uint64_t z = 0; z <= 3000; ++z) {
        v = {y + z, y, z};
        bad += !add.accepts(encode_tuple(v));
        v = {y + z + 1 + (y & 3), y, z};
        bad += add.accepts(encode_tuple(v));
      }
    }
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<std::uint64_t> pick(0, 1000000000);
    for (int t = 0; t < 100000; ++t) {
      const std::uint64_t y = pick(rng), z = pick(rng);
      v = {y + z, y, z};
      bad += !add.accepts(encode_tuple(v));
      v = {y + z + 1, y, z};
      bad += add.accepts(encode_tuple(v));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {bad == 0 && secs < 60, std::to_string(bad) + " disagreements, " + std::to_string(add.state_count()) +
                                       " states"};
  });

  criterion(11, "property checks: round trip, boolean laws, zero-prefix invariance, letter counts",
            [&]() -> Result {
              std::size_t bad = 0;
              for (std::uint64_t n = 0; n <= 1000000; ++n) bad += from_trib(to_trib(n)) != n;
              std::mt19937_64 rng(11);
              for (int t = 0; t < 100; ++t) {
                const Automaton a = testing::random_automaton(rng, 2, 2 + t % 7);
                const Automaton b = testing::random_automaton(rng, 2, 3 + t % 5);
                bad += !language_equal(complement(product(a, b, BoolOp::Or)),
                                       product(complement(a), complement(b), BoolOp::And));
                bad += !language_equal(minimize(a), a);
                bad += !is_empty(product(a, complement(a), BoolOp::And));
              }
              std::size_t relations = 0;
              for (const auto& [name, a] : art) {
                if (const auto* r = std::get_if<Relation>(&a)) {
                  ++relations;
                  bad += !is_zero_prefix_invariant(r->automaton());
                }
              }
              const std::array<const Relation*, 3> sync{&get_relation(art, "tribsync0"),
                                                        &get_relation(art, "tribsync1"),
                                                        &get_relation(art, "tribsync2")};
              for (std::uint64_t n = 0; n <= 100000; ++n) {
                std::uint64_t total = 0;
                for (const Relation* r : sync) total += solve_for(*r, {{"n", n}}, "s").value_or(~0ull >> 2);
                bad += total != n;
              }
              return {bad == 0, std::to_string(bad) + " violations; " + std::to_string(relations) +
                                    " relations checked for zero-prefix invariance"};
            });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures;
}

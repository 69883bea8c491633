#include "doctest.h"
#include "support.hpp"
#include "tribab/numeration.hpp"
#include "tribab/text_format.hpp"
#include "tribab/word_dfao.hpp"

using namespace tribab;

TEST_CASE("walnut text of the last-digit DFAO") {
  const std::string text = to_walnut(build_trl());
  CHECK(text.rfind("msd_trib\n0 0\n0 -> 0\n1 -> 1\n", 0) == 0);
  CHECK(text.find("-1\n") != std::string::npos);  // dead state written
  const Dfao back = dfao_from_walnut(text);
  CHECK(isomorphic(back, build_trl()));
  CHECK(to_walnut(back) == text);
}

TEST_CASE("plain automata omit the dead state") {
  const Automaton rst = minimize(shift_rel());
  const std::string text = to_walnut(rst);
  CHECK(text.rfind("msd_trib msd_trib\n", 0) == 0);
  const Automaton back = automaton_from_walnut(text);
  CHECK(back.state_count() == rst.state_count());
  CHECK(isomorphic(minimize(back), rst));
  CHECK(to_walnut(back) == text);
}

TEST_CASE("round trips on random automata") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 40; ++t) {
    const Automaton a = minimize(testing::random_automaton(rng, t % 4, 2 + t % 7));
    const std::string text = to_walnut(a);
    const Automaton b = automaton_from_walnut(text);
    CHECK(language_equal(a, b));
    CHECK(to_walnut(b) == text);
  }
}

TEST_CASE("zero-track automata") {
  const Automaton yes = Automaton::universal(TrackSignature(0));
  const std::string text = to_walnut(yes);
  CHECK(text == "\n0 1\n-> 0\n");
  CHECK(automaton_from_walnut(text).accepts(PaddedWord{}));
}

TEST_CASE("malformed inputs") {
  CHECK_THROWS_AS(automaton_from_walnut(""), FormatError);
  CHECK_THROWS_AS(automaton_from_walnut("msd_fib\n0 1\n"), FormatError);
  CHECK_THROWS_AS(automaton_from_walnut("msd_trib\n0 1\n0 -> 4\n"), FormatError);
  CHECK_THROWS_AS(automaton_from_walnut("msd_trib\n0 1\n0 -> 0\n0 -> 0\n"), FormatError);
  CHECK_THROWS_AS(automaton_from_walnut("msd_trib\n0 1\n0 1 -> 0\n"), FormatError);
  CHECK_THROWS_AS(automaton_from_walnut("msd_trib\n0 2\n0 -> 0\n"), FormatError);
  CHECK_THROWS_AS(automaton_from_walnut("msd_trib\n1 1\n0 -> 1\n"), FormatError);
  CHECK_THROWS_AS(dfao_from_walnut("msd_trib\n0 3\n0 -> 0\n"), FormatError);
  try {
    automaton_from_walnut("msd_trib\n0 1\n0 -> 0\nbogus line here\n");
    FAIL("expected an error");
  } catch (const FormatError& e) {
    CHECK(e.line() == 4);
  }
}

TEST_CASE("missing transitions go to a fresh dead state") {
  const Automaton a = automaton_from_walnut("msd_trib\n0 1\n0 -> 0\n");
  CHECK(a.state_count() == 2);
  CHECK(a.accepts(PaddedWord{0, 0}));
  CHECK_FALSE(a.accepts(PaddedWord{1}));
}

TEST_CASE("dot output") {
  const std::string dot = to_dot(build_trl(), "TRL");
  CHECK(dot.rfind("digraph \"TRL\" {", 0) == 0);
  CHECK(dot.find("0 [label=\"0/0\"") != std::string::npos);
  CHECK(dot.find("/-1\"") != std::string::npos);
  CHECK(dot.back() == '\n');
  CHECK(dot.find("}\n") == dot.size() - 2);
  const std::string rel = to_dot(lt_rel());
  CHECK(rel.find("[0 1]") != std::string::npos);
  CHECK(rel.find("doublecircle") != std::string::npos);
}

TEST_CASE("json output") {
  const std::vector<std::string> vars{"x", "y"};
  const std::string j = to_json(minimize(lt_rel()), &vars);
  CHECK(j.find("\"kind\": \"relation\"") != std::string::npos);
  CHECK(j.find("\"vars\"") != std::string::npos);
  CHECK(j.find("\"live_state_count\"") != std::string::npos);
  CHECK(to_json(build_tr()).find("\"outputs\"") != std::string::npos);
}

// Randomized and exhaustive properties. Every suite runs standalone with
// `property_tests -ts=<suite>`.

#include <random>

#include "doctest.h"
#include "support.hpp"
#include "tribab/formula.hpp"
#include "tribab/numeration.hpp"
#include "tribab/oracle.hpp"
#include "tribab/word_dfao.hpp"

using namespace tribab;

TEST_SUITE("numeration") {
  TEST_CASE("round trip up to one million") {
    for (std::uint64_t n = 0; n <= 1000000; ++n) {
      const TribWord w = to_trib(n);
      if (!w.is_canonical() || from_trib(w) != n) FAIL("round trip fails at n=" << n);
    }
  }

  TEST_CASE("padding never changes the value") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 10000; ++t) {
      const std::uint64_t n = rng() % 1000000000000ull;
      const TribWord w = to_trib(n);
      CHECK(from_trib(w.padded(w.size() + rng() % 5)) == n);
    }
  }

  TEST_CASE("larger values have longer or lexicographically larger words") {
    for (std::uint64_t n = 1; n < 20000; ++n) {
      const std::string a = to_trib(n - 1).bits(), b = to_trib(n).bits();
      CHECK((a.size() < b.size() || (a.size() == b.size() && a < b)));
    }
  }
}

TEST_SUITE("adder") {
  TEST_CASE("exhaustive up to 3000") {
    const Automaton add = build_adder();
    std::vector<std::uint64_t> v(3);
    for (std::uint64_t y = 0; y <= 3000; ++y) {
      for (std::uint64_t z = 0; z <= 3000; ++z) {
        v = {y + z, y, z};
        if (!add.accepts(encode_tuple(v))) FAIL("rejects " << y << "+" << z);
        v = {y + z + 1, y, z};
        if (add.accepts(encode_tuple(v))) FAIL("accepts " << y << "+" << z << "+1");
      }
    }
  }

  TEST_CASE("random pairs up to 1e9") {
    const Automaton add = build_adder();
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::uint64_t> pick(0, 1000000000);
    for (int t = 0; t < 100000; ++t) {
      const std::uint64_t y = pick(rng), z = pick(rng);
      const std::uint64_t off = pick(rng) % 3;  // 0: correct sum, else wrong
      const std::vector<std::uint64_t> v{y + z + off, y, z};
      if (add.accepts(encode_tuple(v)) != (off == 0)) FAIL("adder wrong at " << y << "+" << z);
    }
  }

  TEST_CASE("bound is stable") {
    CHECK(language_equal(build_adder_with_bound(16), build_adder_with_bound(20)));
    CHECK(language_equal(build_adder_with_bound(16), build_adder()));
  }
}

TEST_SUITE("comparisons") {
  TEST_CASE("lt, leq and eq against integers up to 500") {
    const Automaton lt = lt_rel(), leq = leq_rel(), eq = eq_rel();
    for (std::uint64_t x = 0; x <= 500; ++x) {
      for (std::uint64_t y = 0; y <= 500; ++y) {
        const PaddedWord w = encode_tuple(std::vector<std::uint64_t>{x, y});
        if (lt.accepts(w) != (x < y) || leq.accepts(w) != (x <= y) || eq.accepts(w) != (x == y)) {
          FAIL("comparison wrong at " << x << "," << y);
        }
      }
    }
  }

  TEST_CASE("right shift drops the last digit up to 2000") {
    const Relation rst(shift_rel(), {"m", "n"});
    for (std::uint64_t m = 0; m <= 2000; ++m) {
      std::string b = to_trib(m).bits();
      if (!b.empty()) b.pop_back();
      const std::uint64_t want = from_trib(b);
      CHECK(rst.contains({m, want}));
      CHECK(solve_for(rst, {{"m", m}}, "n") == want);
    }
    CHECK(is_functional(rst, "n"));
  }
}

TEST_SUITE("boolean algebra") {
  TEST_CASE("laws on random automata") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 200; ++t) {
      const int tracks = 1 + t % 3;
      const Automaton a = testing::random_automaton(rng, tracks, 2 + rng() % 8);
      const Automaton b = testing::random_automaton(rng, tracks, 2 + rng() % 8);
      const Automaton c = testing::random_automaton(rng, tracks, 2 + rng() % 8);
      const auto And = [](const Automaton& x, const Automaton& y) { return product(x, y, BoolOp::And); };
      const auto Or = [](const Automaton& x, const Automaton& y) { return product(x, y, BoolOp::Or); };
      CHECK(language_equal(complement(And(a, b)), Or(complement(a), complement(b))));
      CHECK(language_equal(And(a, Or(b, c)), Or(And(a, b), And(a, c))));
      CHECK(language_equal(Or(a, And(b, c)), And(Or(a, b), Or(a, c))));
      CHECK(language_equal(And(a, b), And(b, a)));
      CHECK(language_equal(product(a, b, BoolOp::Xor), And(Or(a, b), complement(And(a, b)))));
      CHECK(language_equal(product(a, b, BoolOp::Implies), Or(complement(a), b)));
      CHECK(language_equal(product(a, b, BoolOp::Iff), complement(product(a, b, BoolOp::Xor))));
      CHECK(language_equal(Or(a, complement(a)), Automaton::universal(a.signature())));
      CHECK(isomorphic(minimize(a), minimize(minimize(a))));
    }
  }

  TEST_CASE("operations agree with word-level semantics") {
    std::mt19937_64 rng(1234);
    for (int t = 0; t < 100; ++t) {
      const Automaton a = testing::random_automaton(rng, 2, 2 + rng() % 6);
      const Automaton b = testing::random_automaton(rng, 2, 2 + rng() % 6);
      const Automaton m = minimize(a), x = product(a, b, BoolOp::Xor), n = complement(a);
      const std::vector<int> swap{1, 0};
      const Automaton s = reorder_tracks(a, swap);
      for (int k = 0; k < 50; ++k) {
        const PaddedWord w = testing::random_word(rng, 2, 10);
        CHECK(m.accepts(w) == a.accepts(w));
        CHECK(x.accepts(w) == (a.accepts(w) != b.accepts(w)));
        CHECK(n.accepts(w) == !a.accepts(w));
        PaddedWord sw = w;
        for (auto& sym : sw) sym = ((sym & 1u) << 1) | (sym >> 1);
        CHECK(s.accepts(sw) == a.accepts(w));
      }
    }
  }

  TEST_CASE("projection is existential over some padding") {
    std::mt19937_64 rng(77);
    for (int t = 0; t < 40; ++t) {
      const Automaton a = testing::random_automaton(rng, 2, 2 + rng() % 4);
      const Automaton p = project(a, 1);
      const std::size_t pad_max = a.state_count() + 1;
      for (int k = 0; k < 20; ++k) {
        const PaddedWord w = testing::random_word(rng, 1, 5);
        bool want = false;
        for (std::size_t j = 0; j <= pad_max && !want; ++j) {
          const std::size_t len = j + w.size();
          for (std::uint64_t fill = 0; fill < (1ull << len) && !want; ++fill) {
            PaddedWord v(len);
            for (std::size_t i = 0; i < len; ++i) {
              const Symbol x = i < j ? 0 : w[i - j];
              v[i] = x | static_cast<Symbol>(((fill >> i) & 1u) << 1);
            }
            want = a.accepts(v);
          }
        }
        CHECK(p.accepts(w) == want);
      }
    }
  }

  TEST_CASE("determinize matches nfa simulation") {
    std::mt19937_64 rng(5150);
    for (int t = 0; t < 60; ++t) {
      Nfa n(TrackSignature(1));
      const std::size_t states = 2 + rng() % 6;
      for (std::size_t q = 0; q < states; ++q) n.add_state(rng() & 1u);
      n.initial = {0};
      if (rng() & 1u) n.initial.push_back(static_cast<State>(states - 1));
      for (std::size_t e = 0; e < states * 2; ++e) {
        n.add_transition(static_cast<State>(rng() % states), rng() & 1u, static_cast<State>(rng() % states));
      }
      const Automaton d = determinize(n);
      for (int k = 0; k < 40; ++k) {
        const PaddedWord w = testing::random_word(rng, 1, 8);
        std::vector<bool> cur(states, false);
        for (State q : n.initial) cur[q] = true;
        for (Symbol s : w) {
          std::vector<bool> next(states, false);
          for (std::size_t q = 0; q < states; ++q) {
            if (!cur[q]) continue;
            for (State r : n.successors[q * 2 + s]) next[r] = true;
          }
          cur = next;
        }
        bool acc = false;
        for (std::size_t q = 0; q < states; ++q) acc = acc || (cur[q] && n.accepting[q]);
        CHECK(d.accepts(w) == acc);
      }
    }
  }
}

TEST_SUITE("formulas") {
  TEST_CASE("quantifier duality on compiled formulas") {
    const Env env;
    for (const char* body : {"x<y & TR[x]=@0", "x+y=z", "y=x+1 | z<x", "TRL[x+1]=@1 => z=x+y"}) {
      for (const char* v : {"x", "y"}) {
        const std::string a = std::string("A") + v + " " + body;
        const std::string e = std::string("~E") + v + " ~(" + body + ")";
        CHECK(equivalent(compile(a, env), compile(e, env)));
      }
    }
  }

  TEST_CASE("compiled arithmetic matches integers") {
    const Env env;
    const Relation even = compile("Ey x=y+y", env);
    const Relation ge = compile("Ez x=y+z", env);
    const Relation between = compile("Em y<m & m<z", env);
    for (std::uint64_t x = 0; x <= 200; ++x) {
      CHECK(even.contains({x}) == (x % 2 == 0));
      for (std::uint64_t y = 0; y <= 60; y += 3) {
        CHECK(ge.contains({x, y}) == (x >= y));
        if (x <= 60) CHECK(between.contains({y, x}) == (x > y + 1));
      }
    }
  }
}

TEST_SUITE("published relations") {
  TEST_CASE("zero-prefix invariance") {
    for (const auto& [name, art] : testing::artifacts()) {
      if (const auto* r = std::get_if<Relation>(&art)) {
        CHECK_MESSAGE(is_zero_prefix_invariant(r->automaton()), name);
      }
    }
  }

  TEST_CASE("letter counts add up to n up to 1e5") {
    const auto& m = testing::artifacts();
    const TribOracle o(100001);
    std::array<const Relation*, 3> sync{&get_relation(m, "tribsync0"), &get_relation(m, "tribsync1"),
                                       &get_relation(m, "tribsync2")};
    for (std::uint64_t n = 0; n <= 100000; ++n) {
      std::uint64_t total = 0;
      std::array<std::uint64_t, 3> c{};
      for (int a = 0; a < 3; ++a) {
        auto v = solve_for(*sync[a], {{"n", n}}, "s");
        if (!v) FAIL("no value for letter " << a << " at n=" << n);
        c[a] = *v;
        total += *v;
      }
      const ParikhVector p = o.prefix_parikh(n);
      if (total != n || c[0] != p.c0 || c[1] != p.c1) FAIL("letter counts wrong at n=" << n);
    }
  }

  TEST_CASE("TR agrees with the fixed point") {
    const std::string w = generate(200000);
    const Dfao tr = get_dfao(testing::artifacts(), "TR");
    for (std::size_t n = 0; n < w.size(); ++n) {
      if (eval(tr, n) != w[n] - '0') FAIL("TR wrong at n=" << n);
    }
  }

  TEST_CASE("prefix counts at one million") {
    const TribOracle o(1000000);
    const ParikhVector p = o.prefix_parikh(1000000);
    const auto& m = testing::artifacts();
    CHECK(solve_for(get_relation(m, "tribsync0"), {{"n", 1000000}}, "s") == p.c0);
    CHECK(solve_for(get_relation(m, "tribsync1"), {{"n", 1000000}}, "s") == p.c1);
    CHECK(solve_for(get_relation(m, "tribsync2"), {{"n", 1000000}}, "s") == p.c2);
  }

  TEST_CASE("relative sets lie in A") {
    const RangeSetA a = range_set_from_json(get_json(testing::artifacts(), "A"));
    const TribOracle o(TribOracle::sweep_length(5000));
    for (const auto& set : o.sweep(5000)) {
      for (const auto& v : set) CHECK(std::binary_search(a.begin(), a.end(), v));
    }
  }
}

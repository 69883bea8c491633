#include "doctest.h"
#include "tribab/numeration.hpp"

using namespace tribab;

namespace {

bool accepts_tuple(const Automaton& a, std::vector<std::uint64_t> v) { return a.accepts(encode_tuple(v)); }

PaddedWord bits(const std::string& s) {
  PaddedWord w;
  for (char c : s) w.push_back(static_cast<Symbol>(c - '0'));
  return w;
}

}  // namespace

TEST_CASE("basis") {
  const auto& t = TribBasis::instance();
  CHECK(t[0] == 0);
  CHECK(t[1] == 1);
  CHECK(t[2] == 1);
  CHECK(t[3] == 2);
  CHECK(t[4] == 4);
  CHECK(t[5] == 7);
  CHECK(t[6] == 13);
}

TEST_CASE("to_trib") {
  CHECK(to_trib(0).bits().empty());
  CHECK(to_trib(1).bits() == "1");
  CHECK(to_trib(6).bits() == "110");
  CHECK(to_trib(12).bits() == "1101");
  CHECK(to_trib(3914).bits() == "10011000000000");
  for (std::uint64_t n = 0; n < 5000; ++n) CHECK(to_trib(n).is_canonical());
}

TEST_CASE("from_trib") {
  CHECK(from_trib("110") == 6);
  CHECK(from_trib("0110") == 6);
  CHECK(from_trib("11") == 3);
  CHECK(from_trib("") == 0);
  CHECK_THROWS(from_trib("102"));
}

TEST_CASE("tribword") {
  CHECK(TribWord("0110").padded(6).bits() == "000110");
  CHECK_FALSE(TribWord("0110").is_canonical());
  CHECK_FALSE(TribWord("1110").is_canonical());
  CHECK(TribWord("").is_canonical());
  CHECK_THROWS(TribWord("12"));
}

TEST_CASE("tuple encoding") {
  const std::vector<std::uint64_t> v{12, 6, 0};
  const PaddedWord w = encode_tuple(v);
  CHECK(w.size() == 4);
  CHECK(decode_tuple(w, 3) == v);
  CHECK(encode_tuple(v, 7).size() == 7);
  CHECK(decode_tuple(encode_tuple(v, 7), 3) == v);
}

TEST_CASE("valid representations") {
  const Automaton v = valid_dfa();
  CHECK(v.accepts(bits("0001101")));
  CHECK_FALSE(v.accepts(bits("1110")));
  CHECK(v.accepts(PaddedWord{}));
  const Automaton second = valid_tracks(2, 0b10);
  CHECK(second.accepts(encode_tuple(std::vector<std::uint64_t>{0, 6})));
  CHECK(second.accepts(columns_from_tracks(std::vector<std::string>{"111", "000"})));
  CHECK_FALSE(second.accepts(columns_from_tracks(std::vector<std::string>{"000", "111"})));
}

TEST_CASE("adder") {
  const Automaton add = build_adder();
  CHECK(accepts_tuple(add, {12, 6, 6}));
  CHECK(accepts_tuple(add, {7, 3, 4}));
  CHECK_FALSE(accepts_tuple(add, {5, 3, 3}));
  for (std::uint64_t n = 0; n <= 3000; ++n) CHECK(accepts_tuple(add, {n, n, 0}));
  // Invalid tracks are rejected even when the values would add up.
  CHECK_FALSE(add.accepts(columns_from_tracks(std::vector<std::string>{"0111", "0111", "0000"})));
  CHECK(language_equal(build_adder_with_bound(32), add));
}

TEST_CASE("comparisons") {
  CHECK(accepts_tuple(eq_rel(), {6, 6}));
  CHECK_FALSE(accepts_tuple(lt_rel(), {6, 6}));
  CHECK(accepts_tuple(lt_rel(), {6, 12}));
  CHECK(accepts_tuple(leq_rel(), {6, 6}));
  CHECK_FALSE(accepts_tuple(leq_rel(), {7, 6}));
}

TEST_CASE("right shift") {
  const Automaton rst = shift_rel();
  CHECK(accepts_tuple(rst, {12, 6}));
  CHECK(accepts_tuple(rst, {0, 0}));
  CHECK(accepts_tuple(rst, {1, 0}));
  CHECK_FALSE(accepts_tuple(rst, {12, 7}));
}

TEST_CASE("constants") {
  for (std::uint64_t c : {0, 1, 6, 3914}) {
    const Automaton a = constant_rel(c);
    for (std::uint64_t n = 0; n < 4000; n += 37) CHECK(accepts_tuple(a, {n}) == (n == c));
    CHECK(accepts_tuple(a, {c}));
  }
}

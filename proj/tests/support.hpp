#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tribab/automaton.hpp"
#include "tribab/dfao.hpp"
#include "tribab/pipeline.hpp"

namespace testing {

inline tribab::Automaton random_automaton(std::mt19937_64& rng, int tracks, std::size_t states) {
  const std::size_t k = std::size_t{1} << tracks;
  std::uniform_int_distribution<tribab::State> pick(0, static_cast<tribab::State>(states - 1));
  std::vector<tribab::State> delta(states * k);
  for (auto& t : delta) t = pick(rng);
  std::vector<std::uint8_t> acc(states);
  for (auto& a : acc) a = static_cast<std::uint8_t>(rng() & 1u);
  return tribab::Automaton(tribab::TrackSignature(tracks), std::move(delta), std::move(acc), 0);
}

inline tribab::PaddedWord random_word(std::mt19937_64& rng, int tracks, std::size_t max_len) {
  tribab::PaddedWord w(rng() % (max_len + 1));
  for (auto& s : w) s = static_cast<tribab::Symbol>(rng() & ((1u << tracks) - 1));
  return w;
}

/// One in-process pipeline run shared by every test in the binary.
inline const tribab::ArtifactMap& artifacts() {
  static const tribab::ArtifactMap m = tribab::run_pipeline();
  return m;
}

struct TableRow {
  int q, d0, d1, tau1, tau2;
};

inline std::vector<TableRow> load_dfao_table() {
  std::ifstream in(TRIBAB_TEST_DATA "/dfao_table.txt");
  std::vector<TableRow> rows;
  for (TableRow r; in >> r.q >> r.d0 >> r.d1 >> r.tau1 >> r.tau2;) rows.push_back(r);
  return rows;
}

/// Machine transcribed from the table with the chosen output column.
inline tribab::Dfao transcribed_dfao(bool cardinality) {
  std::vector<tribab::State> delta;
  std::vector<int> out;
  for (const auto& r : load_dfao_table()) {
    delta.push_back(static_cast<tribab::State>(r.d0));
    delta.push_back(static_cast<tribab::State>(r.d1));
    out.push_back(cardinality ? r.tau2 : r.tau1);
  }
  return tribab::Dfao(tribab::TrackSignature(1), std::move(delta), std::move(out), 0);
}

}  // namespace testing

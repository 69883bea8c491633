#pragma once

// Shared representation for labelled complete DFAs. Automaton uses labels
// {0,1}; Dfao uses arbitrary integer outputs.

#include <vector>

#include "tribab/automaton.hpp"

namespace tribab::detail {

struct Machine {
  TrackSignature sig;
  std::vector<State> delta;
  std::vector<int> label;
  State initial = 0;

  std::size_t states() const { return label.size(); }
};

/// Keep only states reachable from the initial state, numbered in BFS order
/// (symbols visited in increasing order). The initial state becomes 0.
Machine canonical_reachable(const Machine& m);

/// Hopcroft partition refinement followed by canonical_reachable.
Machine minimize_machine(const Machine& m);

bool isomorphic_machines(const Machine& a, const Machine& b);

Machine to_machine(const Automaton& a);
Automaton to_automaton(Machine m);

}  // namespace tribab::detail

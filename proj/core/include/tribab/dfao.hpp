#pragma once

#include <span>
#include <vector>

#include "tribab/automaton.hpp"

namespace tribab {

/// Output reported by the sink reached on illegal representations.
inline constexpr int kDeadOutput = -1;

/// Deterministic finite automaton with output (Moore machine), total over
/// the full symbol space.
class Dfao {
 public:
  Dfao() = default;
  Dfao(TrackSignature sig, std::vector<State> delta, std::vector<int> output,
       State initial = 0);

  TrackSignature signature() const { return sig_; }
  int tracks() const { return sig_.tracks(); }
  std::size_t symbol_count() const { return sig_.symbol_count(); }
  std::size_t state_count() const { return output_.size(); }
  State initial() const { return initial_; }

  State next(State q, Symbol a) const { return delta_[q * symbol_count() + a]; }
  int output(State q) const { return output_[q]; }
  const std::vector<State>& transitions() const { return delta_; }
  const std::vector<int>& outputs() const { return output_; }

  State run(std::span<const Symbol> word) const;
  int eval_word(std::span<const Symbol> word) const { return output(run(word)); }

  /// Accepts exactly the words whose final state outputs `value`.
  Automaton output_language(int value) const;

 private:
  TrackSignature sig_;
  State initial_ = 0;
  std::vector<State> delta_;
  std::vector<int> output_;
};

/// Moore minimization; states are renumbered breadth-first from the initial
/// state, so equal machines come out identical.
Dfao minimize(const Dfao& d);

bool isomorphic(const Dfao& a, const Dfao& b);

}  // namespace tribab

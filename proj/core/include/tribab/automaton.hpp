#pragma once

// Multi-track finite automata over {0,1}^k.
//
// A symbol is a column of k digits packed little-endian: bit j of the symbol
// is the digit on track j. Words are read most significant column first, and
// shorter operands are padded with leading zero columns.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tribab {

using State = std::uint32_t;
using Symbol = std::uint32_t;
using PaddedWord = std::vector<Symbol>;

inline constexpr int kMaxTracks = 16;

class AutomatonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of parallel binary tracks. Zero tracks is allowed for closed
/// formulas; such automata read a single "empty column" symbol.
class TrackSignature {
 public:
  constexpr TrackSignature() = default;
  explicit TrackSignature(int tracks);

  constexpr int tracks() const { return tracks_; }
  constexpr std::size_t symbol_count() const { return std::size_t{1} << tracks_; }
  std::string to_string() const;

  friend constexpr bool operator==(TrackSignature, TrackSignature) = default;

 private:
  int tracks_ = 1;
};

/// Complete deterministic automaton. State 0 is not necessarily initial;
/// `initial()` is authoritative.
class Automaton {
 public:
  Automaton() = default;
  Automaton(TrackSignature sig, std::vector<State> delta,
            std::vector<std::uint8_t> accepting, State initial = 0);

  static Automaton empty(TrackSignature sig);
  static Automaton universal(TrackSignature sig);

  TrackSignature signature() const { return sig_; }
  int tracks() const { return sig_.tracks(); }
  std::size_t symbol_count() const { return sig_.symbol_count(); }
  std::size_t state_count() const { return accepting_.size(); }
  State initial() const { return initial_; }

  State next(State q, Symbol a) const { return delta_[q * symbol_count() + a]; }
  bool accepting(State q) const { return accepting_[q] != 0; }
  std::span<const State> row(State q) const {
    return {delta_.data() + q * symbol_count(), symbol_count()};
  }
  const std::vector<State>& transitions() const { return delta_; }
  const std::vector<std::uint8_t>& accepting_flags() const { return accepting_; }

  /// Run from the initial state; true iff the final state accepts.
  bool accepts(std::span<const Symbol> word) const;

  /// Index of a non-accepting sink state, if one exists.
  std::optional<State> dead_state() const;

 private:
  TrackSignature sig_;
  State initial_ = 0;
  std::vector<State> delta_;
  std::vector<std::uint8_t> accepting_;
};

/// Nondeterministic automaton; only used transiently before determinize().
struct Nfa {
  TrackSignature signature;
  std::vector<State> initial;
  std::vector<std::uint8_t> accepting;
  /// successors[q * symbol_count + a]
  std::vector<std::vector<State>> successors;

  explicit Nfa(TrackSignature sig, std::size_t states = 0);
  std::size_t state_count() const { return accepting.size(); }
  State add_state(bool accept);
  void add_transition(State from, Symbol a, State to);
};

enum class BoolOp { And, Or, Xor, Implies, Iff };

Automaton determinize(const Nfa& nfa);
Automaton minimize(const Automaton& a);
Automaton product(const Automaton& a, const Automaton& b, BoolOp op);
Automaton complement(const Automaton& a);

/// Existentially quantify `track`. The result is saturated under leading
/// zero columns, determinized and minimized.
Automaton project(const Automaton& a, int track);

/// Result track r reads source track sources[r]; -1 marks a fresh
/// unconstrained track. Every source track must be used at least once; a
/// source used twice forces the two result tracks to carry equal digits.
Automaton reorder_tracks(const Automaton& a, std::span<const int> sources);

/// Closure under leading zero columns: the language {w : 0^j w accepted for some j}.
Automaton saturate_leading_zeros(const Automaton& a);

bool is_empty(const Automaton& a);
bool language_equal(const Automaton& a, const Automaton& b);

/// All accepted words of length <= max_len, in shortlex order.
std::vector<PaddedWord> enumerate(const Automaton& a, std::size_t max_len);

/// Shortest accepted word; ties broken lexicographically on symbol values.
std::optional<PaddedWord> shortest_accepted(const Automaton& a);

/// True iff there is a state bijection preserving initial state,
/// transitions and acceptance. Both arguments must be accessible.
bool isomorphic(const Automaton& a, const Automaton& b);

/// Words whose first column is nonzero (plus the empty word) are the
/// canonical padded words. True iff infinitely many of them are accepted.
bool has_infinitely_many_canonical(const Automaton& a);

/// Accepted canonical words, shortlex, or nullopt if there are more than
/// `limit` of them (or infinitely many).
std::optional<std::vector<PaddedWord>> canonical_words(const Automaton& a,
                                                       std::size_t limit);

/// Assemble per-track digit strings into columns. All strings must have
/// equal length.
PaddedWord columns_from_tracks(std::span<const std::string> tracks);
std::vector<std::string> tracks_from_columns(const PaddedWord& word, int tracks);
std::string format_word(const PaddedWord& word, int tracks);

}  // namespace tribab

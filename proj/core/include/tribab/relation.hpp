#pragma once

// Named-variable relations over Tribonacci-synchronized automata.
//
// A Relation pairs an automaton with one variable name per track. Tracks are
// always kept in sorted name order, every track carries a valid (111-free)
// digit string, and membership is invariant under leading zero columns.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tribab/automaton.hpp"
#include "tribab/dfao.hpp"

namespace tribab {

class RelationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Relation {
 public:
  Relation() = default;
  /// Lift: track j of `a` is variable vars[j]. Tracks are reordered so the
  /// stored variable list is sorted.
  Relation(Automaton a, std::vector<std::string> vars);

  static Relation truth(bool value);

  const Automaton& automaton() const { return automaton_; }
  const std::vector<std::string>& vars() const { return vars_; }
  int arity() const { return static_cast<int>(vars_.size()); }
  std::size_t state_count() const { return automaton_.state_count(); }

  /// Values are given in vars() order.
  bool contains(std::span<const std::uint64_t> values) const;
  bool contains(std::initializer_list<std::uint64_t> values) const {
    return contains(std::span<const std::uint64_t>(values.begin(), values.size()));
  }
  bool contains(const std::map<std::string, std::uint64_t>& assignment) const;
  /// Truth value of a 0-ary relation.
  bool holds() const;

 private:
  Automaton automaton_ = Automaton::universal(TrackSignature(0));
  std::vector<std::string> vars_;
};

inline Relation lift(Automaton a, std::vector<std::string> vars) {
  return Relation(std::move(a), std::move(vars));
}

/// Re-layout over `target` (a sorted superset of r.vars()); new variables
/// range over all naturals.
Relation align(const Relation& r, const std::vector<std::string>& target);

/// Rename variables; several old names may map to the same new name, which
/// identifies those variables.
Relation rename(const Relation& r, const std::map<std::string, std::string>& mapping);

Relation rel_and(const Relation& a, const Relation& b);
Relation rel_or(const Relation& a, const Relation& b);
Relation rel_xor(const Relation& a, const Relation& b);
Relation rel_implies(const Relation& a, const Relation& b);
Relation rel_iff(const Relation& a, const Relation& b);
Relation rel_not(const Relation& r);
Relation rel_exists(const Relation& r, const std::vector<std::string>& vars);
Relation rel_forall(const Relation& r, const std::vector<std::string>& vars);

/// n such that the word DFAO outputs `value` at n.
Relation dfao_eq(const Dfao& word, const std::string& var, int value);

Relation atom_eq(const std::string& x, const std::string& y);
Relation atom_add(const std::string& x, const std::string& y, const std::string& z);  ///< x = y + z
Relation atom_lt(const std::string& x, const std::string& y);
Relation atom_leq(const std::string& x, const std::string& y);
Relation atom_const(const std::string& x, std::uint64_t c);
Relation atom_valid(const std::string& x);  ///< every natural

bool is_empty(const Relation& r);
/// Same variables and same language.
bool equivalent(const Relation& a, const Relation& b);

/// Value tuples (in vars() order), increasing shortlex on canonical words;
/// nullopt when more than `limit` or infinitely many.
std::optional<std::vector<std::vector<std::uint64_t>>> values(const Relation& r,
                                                              std::size_t limit);

/// Up to `count` smallest tuples in shortlex order of canonical padded words.
std::vector<std::vector<std::uint64_t>> sample_values(const Relation& r, std::size_t count);

/// Least tuple (shortest padded word); nullopt if empty.
std::optional<std::vector<std::uint64_t>> least_value(const Relation& r);

/// Some value of `unknown` completing `known` to a tuple of r, or nullopt.
/// For a functional relation this evaluates the function.
std::optional<std::uint64_t> solve_for(const Relation& r,
                                       const std::map<std::string, std::uint64_t>& known,
                                       const std::string& unknown);

/// Language unchanged by prepending an all-zero column.
bool is_zero_prefix_invariant(const Automaton& a);

/// Shared numeration automata (built once per process).
const Automaton& shared_adder();

}  // namespace tribab

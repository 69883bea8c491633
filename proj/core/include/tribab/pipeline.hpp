#pragma once

// The decision procedure for the abelian complexity of the Tribonacci word:
// synchronized prefix Parikh automata, factor relations, coordinate ranges,
// the range set A, per-vector predicates, discovery of the sets A_n, and the
// final DFAOs.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tribab/dfao.hpp"
#include "tribab/formula.hpp"
#include "tribab/oracle.hpp"
#include "tribab/relation.hpp"

namespace tribab {

class PipelineError : public std::runtime_error {
 public:
  PipelineError(std::string stage, const std::string& msg)
      : std::runtime_error(stage + ": " + msg), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// f(i,n) ranges; sorted lexicographically.
using RangeSetA = std::vector<RelativeVector>;

struct CoordinateRange {
  int max_positive = 0;  ///< largest u with f_a(i,n) = u
  int max_negative = 0;  ///< largest u with f_a(i,n) = -u
  friend bool operator==(const CoordinateRange&, const CoordinateRange&) = default;
};

/// Subset of A as a bit mask over RangeSetA order.
class SubsetOfA {
 public:
  constexpr SubsetOfA() = default;
  constexpr explicit SubsetOfA(std::uint16_t mask) : mask_(mask) {}

  constexpr std::uint16_t mask() const { return mask_; }
  int size() const;
  bool contains(std::size_t index) const { return (mask_ >> index) & 1u; }
  std::vector<RelativeVector> vectors(const RangeSetA& a) const;
  static SubsetOfA from_vectors(const RangeSetA& a, const std::vector<RelativeVector>& v);
  /// "{(a,b,c),(d,e,f)}" in RangeSetA order.
  std::string to_string(const RangeSetA& a) const;

  friend constexpr bool operator==(SubsetOfA, SubsetOfA) = default;

 private:
  std::uint16_t mask_ = 0;
};

struct ClassRow {
  std::uint64_t min_index = 0;
  SubsetOfA subset;
  int cardinality = 0;
};

struct ClassTable {
  RangeSetA range;
  std::vector<ClassRow> rows;
  /// Least canonical word accepted by the last nonempty "missing" automaton.
  std::string final_missing_word;

  const ClassRow* find(SubsetOfA s) const;
};

std::string to_json(const ClassTable& t);
ClassTable class_table_from_json(const std::string& text);
std::string to_json(const RangeSetA& a);
RangeSetA range_set_from_json(const std::string& text);
std::string to_json(const std::array<CoordinateRange, 3>& r);
std::array<CoordinateRange, 3> ranges_from_json(const std::string& text);

// --- Formula texts --------------------------------------------------------

std::string tribsync_formula(int letter);
std::string tribfac_formula(int letter);
std::string posrange_formula(int letter);
std::string negrange_formula(int letter);
std::string validtriples_formula(const std::array<CoordinateRange, 3>& ranges);
std::string triple_name(const RelativeVector& v);  ///< t000, t10m1, tm12m1, ...
std::string triple_formula(const RelativeVector& v);
std::string occurrence_formula(const std::string& predicate);
std::string subset_equiv_formula(const std::vector<std::string>& predicates);
/// "~($subset(n,r0) | ...)" over the given representatives.
std::string last_formula(const std::vector<std::uint64_t>& representatives);
std::string missing_formula();

// --- Steps ----------------------------------------------------------------

/// n -> |TR[0..n-1]|_letter built directly from the shift relation and the
/// last-digit DFAO. Variables (n, s).
Relation build_tribsync(int letter, const Relation& rst, const Dfao& trl);

/// (i, n, s): s = |TR[i..i+n-1]|_letter.
Relation build_tribfac(int letter, const Relation& tribsync);

/// True iff `r` is a total function of its other variables into `out`.
bool is_functional(const Relation& r, const std::string& out);

CoordinateRange compute_range(int letter, const Relation& tribfac);

/// Relation (s,t,u) of f(i,n) + offsets, with offsets = max_negative.
Relation build_validtriples(const std::array<Relation, 3>& tribfac,
                            const std::array<CoordinateRange, 3>& ranges);
RangeSetA compute_valid_triples(const Relation& validtriples,
                                const std::array<CoordinateRange, 3>& ranges);

/// (i, n): f(i,n) = v.
Relation build_triple_predicate(const RelativeVector& v, const std::array<Relation, 3>& tribfac);
/// (n): v in A_n.
Relation build_occurrence(const Relation& predicate, const std::string& name);
/// (m, n): A_m = A_n.
Relation build_subset_equiv(const std::map<std::string, Relation>& predicates,
                            const RangeSetA& range);

/// Minimal index of every distinct A_n; stops when no n is left uncovered.
ClassTable discover_subsets(const RangeSetA& range, const Relation& subset_equiv,
                            const std::vector<Relation>& occurrences);

/// TRAS outputs the class minimum, TRAC the class cardinality; both output
/// -1 on illegal representations.
std::pair<Dfao, Dfao> assemble_dfaos(const ClassTable& table,
                                     const std::vector<Relation>& occurrences);

/// Infinitely many n with TRAC[n] = value.
bool check_infinitude(const Dfao& trac, int value);
/// Infinitely many n with TRAS[n] = row.min_index.
bool check_subset_infinitude(const Dfao& tras, const ClassRow& row);

// --- Staged build -----------------------------------------------------------

struct JsonDoc {
  std::string text;
};

using Artifact = std::variant<Relation, Dfao, JsonDoc>;
using ArtifactMap = std::map<std::string, Artifact>;

struct Stage {
  std::string name;
  std::vector<std::string> deps;  ///< stage names
  std::function<ArtifactMap(const ArtifactMap&)> build;
};

/// Every stage in dependency order.
std::vector<Stage> pipeline_stages();

/// Run every stage in process.
ArtifactMap run_pipeline();

/// Rebuild an Env from pipeline artifacts: relations under their artifact
/// names (plus "subset" for subseteq) and TRAS/TRAC as words.
Env env_from_artifacts(const ArtifactMap& artifacts);

const Relation& get_relation(const ArtifactMap& m, const std::string& name);
const Dfao& get_dfao(const ArtifactMap& m, const std::string& name);
const std::string& get_json(const ArtifactMap& m, const std::string& name);

struct StateCounts {
  std::size_t total = 0;       ///< minimized complete automaton
  std::size_t without_dead = 0;
};
StateCounts state_counts(const Automaton& a);

}  // namespace tribab

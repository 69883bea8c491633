#include "tribab/relation.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "tribab/numeration.hpp"

namespace tribab {

namespace {

void require_distinct(const std::vector<std::string>& vars) {
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (!seen.insert(v).second) throw RelationError("duplicate variable '" + v + "'");
  }
}

std::vector<std::string> sorted_union(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Relation combine(const Relation& a, const Relation& b, BoolOp op) {
  const auto vars = sorted_union(a.vars(), b.vars());
  const Relation x = align(a, vars);
  const Relation y = align(b, vars);
  Automaton p = product(x.automaton(), y.automaton(), op);
  // Implication and equivalence can accept tuples outside the valid
  // universe when both sides reject them.
  if (op == BoolOp::Implies || op == BoolOp::Iff) {
    const int k = static_cast<int>(vars.size());
    p = product(p, valid_tracks(k, (1u << k) - 1), BoolOp::And);
  }
  return Relation(std::move(p), vars);
}

const Automaton& shared(int which) {
  static const Automaton eq = eq_rel();
  static const Automaton lt = lt_rel();
  static const Automaton leq = leq_rel();
  static const Automaton valid = valid_dfa();
  switch (which) {
    case 0: return eq;
    case 1: return lt;
    case 2: return leq;
    default: return valid;
  }
}

// Instantiate a base automaton whose track j is named names[j]; repeated
// names are identified.
Relation instantiate(const Automaton& base, const std::vector<std::string>& names) {
  std::vector<std::string> distinct;
  std::vector<std::pair<std::string, std::string>> links;
  std::set<std::string> used;
  int fresh = 0;
  for (const auto& n : names) {
    if (used.insert(n).second) {
      distinct.push_back(n);
    } else {
      std::string f = "#dup" + std::to_string(fresh++);
      links.emplace_back(f, n);
      distinct.push_back(f);
    }
  }
  Relation r(base, distinct);
  for (const auto& [f, n] : links) {
    r = rel_exists(rel_and(r, Relation(shared(0), {f, n})), {f});
  }
  return r;
}

}  // namespace

const Automaton& shared_adder() {
  static const Automaton adder = build_adder();
  return adder;
}

Relation::Relation(Automaton a, std::vector<std::string> vars) {
  if (static_cast<int>(vars.size()) != a.tracks()) {
    throw RelationError("relation has " + std::to_string(vars.size()) + " variables for " +
                        a.signature().to_string());
  }
  require_distinct(vars);
  std::vector<int> order(vars.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return vars[x] < vars[y]; });
  if (!std::is_sorted(vars.begin(), vars.end())) {
    a = reorder_tracks(a, order);
  }
  for (int j : order) vars_.push_back(vars[j]);
  automaton_ = std::move(a);
}

Relation Relation::truth(bool value) {
  const TrackSignature none(0);
  return Relation(value ? Automaton::universal(none) : Automaton::empty(none), {});
}

bool Relation::contains(std::span<const std::uint64_t> values) const {
  if (static_cast<int>(values.size()) != arity()) {
    throw RelationError("expected " + std::to_string(arity()) + " values");
  }
  return automaton_.accepts(encode_tuple(values));
}

bool Relation::contains(const std::map<std::string, std::uint64_t>& assignment) const {
  std::vector<std::uint64_t> v;
  for (const auto& name : vars_) {
    auto it = assignment.find(name);
    if (it == assignment.end()) throw RelationError("no value for variable '" + name + "'");
    v.push_back(it->second);
  }
  return contains(v);
}

bool Relation::holds() const {
  if (arity() != 0) throw RelationError("holds() on a relation with free variables");
  return automaton_.accepting(automaton_.initial());
}

Relation align(const Relation& r, const std::vector<std::string>& target) {
  if (target == r.vars()) return r;
  if (!std::is_sorted(target.begin(), target.end())) throw RelationError("align target must be sorted");
  require_distinct(target);
  std::vector<int> sources;
  std::uint32_t fresh_mask = 0;
  for (std::size_t t = 0; t < target.size(); ++t) {
    auto it = std::find(r.vars().begin(), r.vars().end(), target[t]);
    if (it == r.vars().end()) {
      sources.push_back(-1);
      fresh_mask |= 1u << t;
    } else {
      sources.push_back(static_cast<int>(it - r.vars().begin()));
    }
  }
  for (const auto& v : r.vars()) {
    if (std::find(target.begin(), target.end(), v) == target.end()) {
      throw RelationError("align target is missing variable '" + v + "'");
    }
  }
  Automaton a = reorder_tracks(r.automaton(), sources);
  if (fresh_mask) {
    a = product(a, valid_tracks(static_cast<int>(target.size()), fresh_mask), BoolOp::And);
  }
  return Relation(std::move(a), target);
}

Relation rename(const Relation& r, const std::map<std::string, std::string>& mapping) {
  std::vector<std::string> names;
  for (const auto& v : r.vars()) {
    auto it = mapping.find(v);
    names.push_back(it == mapping.end() ? v : it->second);
  }
  return instantiate(r.automaton(), names);
}

Relation rel_and(const Relation& a, const Relation& b) { return combine(a, b, BoolOp::And); }
Relation rel_or(const Relation& a, const Relation& b) { return combine(a, b, BoolOp::Or); }
Relation rel_xor(const Relation& a, const Relation& b) { return combine(a, b, BoolOp::Xor); }
Relation rel_implies(const Relation& a, const Relation& b) { return combine(a, b, BoolOp::Implies); }
Relation rel_iff(const Relation& a, const Relation& b) { return combine(a, b, BoolOp::Iff); }

Relation rel_not(const Relation& r) {
  const int k = r.arity();
  Automaton a = product(complement(r.automaton()), valid_tracks(k, (1u << k) - 1), BoolOp::And);
  return Relation(std::move(a), r.vars());
}

Relation rel_exists(const Relation& r, const std::vector<std::string>& vars) {
  std::vector<int> tracks;
  for (const auto& v : vars) {
    auto it = std::find(r.vars().begin(), r.vars().end(), v);
    if (it == r.vars().end()) throw RelationError("cannot quantify '" + v + "': not a free variable");
    tracks.push_back(static_cast<int>(it - r.vars().begin()));
  }
  std::sort(tracks.begin(), tracks.end());
  tracks.erase(std::unique(tracks.begin(), tracks.end()), tracks.end());
  Automaton a = r.automaton();
  std::vector<std::string> rest = r.vars();
  for (auto it = tracks.rbegin(); it != tracks.rend(); ++it) {
    a = project(a, *it);
    rest.erase(rest.begin() + *it);
  }
  return Relation(std::move(a), rest);
}

Relation rel_forall(const Relation& r, const std::vector<std::string>& vars) {
  return rel_not(rel_exists(rel_not(r), vars));
}

Relation dfao_eq(const Dfao& word, const std::string& var, int value) {
  if (word.tracks() != 1) throw RelationError("word indexing needs a 1-track DFAO");
  Automaton a = product(word.output_language(value), shared(3), BoolOp::And);
  return Relation(saturate_leading_zeros(a), {var});
}

Relation atom_eq(const std::string& x, const std::string& y) {
  return instantiate(shared(0), {x, y});
}

Relation atom_add(const std::string& x, const std::string& y, const std::string& z) {
  return instantiate(shared_adder(), {x, y, z});
}

Relation atom_lt(const std::string& x, const std::string& y) {
  return instantiate(shared(1), {x, y});
}

Relation atom_leq(const std::string& x, const std::string& y) {
  return instantiate(shared(2), {x, y});
}

Relation atom_const(const std::string& x, std::uint64_t c) {
  return Relation(constant_rel(c), {x});
}

Relation atom_valid(const std::string& x) { return Relation(shared(3), {x}); }

bool is_empty(const Relation& r) { return is_empty(r.automaton()); }

bool equivalent(const Relation& a, const Relation& b) {
  return a.vars() == b.vars() && language_equal(a.automaton(), b.automaton());
}

std::optional<std::vector<std::vector<std::uint64_t>>> values(const Relation& r,
                                                              std::size_t limit) {
  auto words = canonical_words(r.automaton(), limit);
  if (!words) return std::nullopt;
  std::vector<std::vector<std::uint64_t>> out;
  for (const auto& w : *words) out.push_back(decode_tuple(w, r.arity()));
  return out;
}

std::vector<std::vector<std::uint64_t>> sample_values(const Relation& r, std::size_t count) {
  const Automaton& a = r.automaton();
  std::vector<std::vector<std::uint64_t>> out;
  if (count == 0) return out;
  if (a.accepting(a.initial())) out.push_back(std::vector<std::uint64_t>(r.arity(), 0));
  // Breadth-first over canonical words, pruning states that cannot accept.
  std::vector<std::uint8_t> live(a.state_count(), 0);
  {
    std::vector<std::vector<State>> rev(a.state_count());
    for (State q = 0; q < a.state_count(); ++q)
      for (State t : a.row(q)) rev[t].push_back(q);
    std::vector<State> stack;
    for (State q = 0; q < a.state_count(); ++q)
      if (a.accepting(q)) { live[q] = 1; stack.push_back(q); }
    while (!stack.empty()) {
      State q = stack.back(); stack.pop_back();
      for (State p : rev[q]) if (!live[p]) { live[p] = 1; stack.push_back(p); }
    }
  }
  std::vector<std::pair<PaddedWord, State>> layer;
  for (Symbol s = 1; s < a.symbol_count(); ++s) {
    const State t = a.next(a.initial(), s);
    if (live[t]) layer.push_back({{s}, t});
  }
  while (!layer.empty() && out.size() < count) {
    std::vector<std::pair<PaddedWord, State>> next;
    for (const auto& [w, q] : layer) {
      if (a.accepting(q)) {
        out.push_back(decode_tuple(w, r.arity()));
        if (out.size() >= count) return out;
      }
      for (Symbol s = 0; s < a.symbol_count(); ++s) {
        const State t = a.next(q, s);
        if (!live[t]) continue;
        PaddedWord v = w;
        v.push_back(s);
        next.emplace_back(std::move(v), t);
      }
    }
    if (next.size() > (std::size_t{1} << 20)) break;  // display helper; stop on blowup
    layer = std::move(next);
  }
  return out;
}

std::optional<std::vector<std::uint64_t>> least_value(const Relation& r) {
  auto w = shortest_accepted(r.automaton());
  if (!w) return std::nullopt;
  return decode_tuple(*w, r.arity());
}

std::optional<std::uint64_t> solve_for(const Relation& r,
                                       const std::map<std::string, std::uint64_t>& known,
                                       const std::string& unknown) {
  const auto& vars = r.vars();
  if (known.size() + 1 != vars.size()) throw RelationError("solve_for: assign every other variable");
  std::vector<std::uint64_t> values;
  int track = -1;
  std::uint64_t largest = 0;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    if (vars[j] == unknown) {
      track = static_cast<int>(j);
      values.push_back(0);
      continue;
    }
    auto it = known.find(vars[j]);
    if (it == known.end()) throw RelationError("solve_for: no value for '" + vars[j] + "'");
    values.push_back(it->second);
    largest = std::max(largest, it->second);
  }
  if (track < 0) throw RelationError("solve_for: '" + unknown + "' is not a variable");
  // The answer needs at most a few more digits than the inputs for the
  // relations built here; try growing lengths until a path is found.
  const Automaton& a = r.automaton();
  const std::size_t base = to_trib(largest).bits().size();
  for (std::size_t extra = 1; extra <= 64; extra *= 2) {
    const PaddedWord cols = encode_tuple(values, base + extra);
    const std::size_t len = cols.size();
    std::vector<std::vector<std::pair<State, int>>> parent(len + 1);
    std::vector<std::vector<char>> seen(len + 1, std::vector<char>(a.state_count(), 0));
    std::vector<std::vector<State>> layer(len + 1);
    parent[0].assign(a.state_count(), {0, 0});
    layer[0] = {a.initial()};
    seen[0][a.initial()] = 1;
    for (std::size_t j = 0; j < len; ++j) {
      parent[j + 1].assign(a.state_count(), {0, 0});
      for (State q : layer[j]) {
        for (Symbol bit = 0; bit < 2; ++bit) {
          const State t = a.next(q, cols[j] | (bit << track));
          if (seen[j + 1][t]) continue;
          seen[j + 1][t] = 1;
          parent[j + 1][t] = {q, static_cast<int>(bit)};
          layer[j + 1].push_back(t);
        }
      }
    }
    for (State q : layer[len]) {
      if (!a.accepting(q)) continue;
      std::string bits(len, '0');
      for (std::size_t j = len; j > 0; --j) {
        bits[j - 1] = static_cast<char>('0' + parent[j][q].second);
        q = parent[j][q].first;
      }
      return from_trib(bits);
    }
  }
  return std::nullopt;
}

bool is_zero_prefix_invariant(const Automaton& a) {
  const State shifted = a.next(a.initial(), 0);
  const Automaton b(a.signature(), a.transitions(), a.accepting_flags(), shifted);
  return language_equal(a, b);
}

}  // namespace tribab

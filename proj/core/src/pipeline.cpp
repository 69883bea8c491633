#include "tribab/pipeline.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "json.hpp"
#include "tribab/numeration.hpp"
#include "tribab/word_dfao.hpp"

namespace tribab {

using nlohmann::json;

int SubsetOfA::size() const { return std::popcount(static_cast<unsigned>(mask_)); }

std::vector<RelativeVector> SubsetOfA::vectors(const RangeSetA& a) const {
  std::vector<RelativeVector> out;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (contains(j)) out.push_back(a[j]);
  }
  return out;
}

SubsetOfA SubsetOfA::from_vectors(const RangeSetA& a, const std::vector<RelativeVector>& v) {
  std::uint16_t mask = 0;
  for (const auto& x : v) {
    auto it = std::find(a.begin(), a.end(), x);
    if (it == a.end()) throw std::invalid_argument("vector " + x.to_string() + " is not in A");
    mask |= static_cast<std::uint16_t>(1u << (it - a.begin()));
  }
  return SubsetOfA(mask);
}

std::string SubsetOfA::to_string(const RangeSetA& a) const {
  std::string out = "{";
  bool first = true;
  for (const auto& v : vectors(a)) {
    if (!first) out += ',';
    first = false;
    out += v.to_string();
  }
  return out + "}";
}

const ClassRow* ClassTable::find(SubsetOfA s) const {
  for (const auto& r : rows) {
    if (r.subset == s) return &r;
  }
  return nullptr;
}

namespace {

json vec_json(const RelativeVector& v) { return json::array({v.d0, v.d1, v.d2}); }
RelativeVector vec_from(const json& j) { return {j.at(0).get<int>(), j.at(1).get<int>(), j.at(2).get<int>()}; }

}  // namespace

std::string to_json(const RangeSetA& a) {
  json j = json::array();
  for (const auto& v : a) j.push_back(vec_json(v));
  return j.dump();
}

RangeSetA range_set_from_json(const std::string& text) {
  RangeSetA out;
  for (const auto& v : json::parse(text)) out.push_back(vec_from(v));
  return out;
}

std::string to_json(const ClassTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"min_index", r.min_index}, {"mask", r.subset.mask()}, {"cardinality", r.cardinality},
                    {"subset", r.subset.to_string(t.range)}});
  }
  json j{{"range", json::parse(to_json(t.range))},
         {"rows", rows},
         {"final_missing_word", t.final_missing_word}};
  return j.dump(2);
}

ClassTable class_table_from_json(const std::string& text) {
  const json j = json::parse(text);
  ClassTable t;
  t.range = range_set_from_json(j.at("range").dump());
  for (const auto& r : j.at("rows")) {
    t.rows.push_back({r.at("min_index").get<std::uint64_t>(), SubsetOfA(r.at("mask").get<std::uint16_t>()),
                      r.at("cardinality").get<int>()});
  }
  t.final_missing_word = j.at("final_missing_word").get<std::string>();
  return t;
}

std::string to_json(const std::array<CoordinateRange, 3>& r) {
  json j = json::array();
  for (const auto& c : r) j.push_back({{"max_positive", c.max_positive}, {"max_negative", c.max_negative}});
  return j.dump();
}

std::array<CoordinateRange, 3> ranges_from_json(const std::string& text) {
  const json j = json::parse(text);
  std::array<CoordinateRange, 3> r;
  for (std::size_t a = 0; a < 3; ++a) {
    r[a] = {j.at(a).at("max_positive").get<int>(), j.at(a).at("max_negative").get<int>()};
  }
  return r;
}

// --- Formula texts --------------------------------------------------------

std::string tribsync_formula(int letter) {
  switch (letter) {
    case 0:
      return "?msd_trib Ea Eb (s=a+b) & ((TRL[n]=@0)=>b=0) & ((TRL[n]=@1)=>b=1) & $rst(n,a)";
    case 1:
      return "?msd_trib Ea Eb Ec (s=b+c) & ((TRL[a]=@0)=>c=0) & ((TRL[a]=@1)=>c=1) & $rst(n,a) & "
             "$rst(a,b)";
    case 2:
      return "?msd_trib Ea Eb Ec Ed (s=c+d) & ((TRL[b]=@0)=>d=0) & ((TRL[b]=@1)=>d=1) & $rst(n,a) & "
             "$rst(a,b) & $rst(b,c)";
    default:
      throw std::invalid_argument("letter must be 0, 1 or 2");
  }
}

std::string tribfac_formula(int letter) {
  const std::string s = "$tribsync" + std::to_string(letter);
  return "?msd_trib Aq Ar (" + s + "(i+n,q) & " + s + "(i,r)) => (q=r+s)";
}

std::string posrange_formula(int letter) {
  const std::string f = "$tribfac" + std::to_string(letter);
  return "?msd_trib E i,n,s,t " + f + "(i,n,s) & " + f + "(0,n,t) & u+t=s";
}

std::string negrange_formula(int letter) {
  const std::string f = "$tribfac" + std::to_string(letter);
  return "?msd_trib E i,n,s,t " + f + "(i,n,s) & " + f + "(0,n,t) & u+s=t";
}

namespace {

// Variables holding |TR[i..i+n-1]|_a and |TR[0..n-1]|_a for letter a.
constexpr std::array<std::array<const char*, 2>, 3> kPairVars{{{"a", "b"}, {"c", "d"}, {"e", "f"}}};

std::string offset_eq(const std::string& lhs, const std::string& rhs, int delta) {
  // lhs = rhs + delta
  if (delta == 0) return lhs + "=" + rhs;
  if (delta > 0) return lhs + "=" + rhs + "+" + std::to_string(delta);
  return lhs + "+" + std::to_string(-delta) + "=" + rhs;
}

}  // namespace

std::string validtriples_formula(const std::array<CoordinateRange, 3>& ranges) {
  static constexpr std::array<const char*, 3> out{"s", "t", "u"};
  std::string f = "?msd_trib Ei,n,a,b,c,d,e,f ";
  for (int a = 0; a < 3; ++a) {
    const std::string fac = "$tribfac" + std::to_string(a);
    const std::string x = kPairVars[a][0], y = kPairVars[a][1];
    if (a) f += " & ";
    f += fac + "(i," "n," + x + ") & " + fac + "(0,n," + y + ") & ";
    const int off = ranges[a].max_negative;
    f += std::string(out[a]) + "+" + y + "=" + x + (off ? "+" + std::to_string(off) : "");
  }
  return f;
}

std::string triple_name(const RelativeVector& v) {
  auto part = [](int x) { return x < 0 ? "m" + std::to_string(-x) : std::to_string(x); };
  return "t" + part(v.d0) + part(v.d1) + part(v.d2);
}

std::string triple_formula(const RelativeVector& v) {
  const std::array<int, 3> d{v.d0, v.d1, v.d2};
  std::string f = "?msd_trib Ea,b,c,d,e,f ";
  for (int a = 0; a < 3; ++a) {
    const std::string fac = "$tribfac" + std::to_string(a);
    const std::string x = kPairVars[a][0], y = kPairVars[a][1];
    if (a) f += " & ";
    f += fac + "(i,n," + x + ") & " + fac + "(0,n," + y + ") & " + offset_eq(x, y, d[a]);
  }
  return f;
}

std::string occurrence_formula(const std::string& predicate) {
  return "?msd_trib Ei $" + predicate + "(i,n)";
}

std::string subset_equiv_formula(const std::vector<std::string>& predicates) {
  std::string f = "?msd_trib ";
  for (std::size_t j = 0; j < predicates.size(); ++j) {
    const std::string& p = predicates[j];
    if (j) f += " & ";
    f += "((Ei $" + p + "(i,m)) <=> (Ej $" + p + "(j,n)))";
  }
  return f;
}

std::string last_formula(const std::vector<std::uint64_t>& representatives) {
  std::string f = "?msd_trib ~(";
  for (std::size_t j = 0; j < representatives.size(); ++j) {
    if (j) f += " | ";
    f += "$subset(n," + std::to_string(representatives[j]) + ")";
  }
  return f + ")";
}

std::string missing_formula() { return "?msd_trib $last(n) & Am (m<n) => ~$last(m)"; }

// --- Steps ----------------------------------------------------------------

Relation build_tribsync(int letter, const Relation& rst, const Dfao& trl) {
  if (letter < 0 || letter > 2) throw std::invalid_argument("letter must be 0, 1 or 2");
  // x_0 = n, x_{k+1} = shift(x_k); s = x_{letter+1} + lastdigit(x_letter).
  auto var = [](int k) { return k == 0 ? std::string("n") : "x" + std::to_string(k); };
  const std::string& from = rst.vars()[0];
  const std::string& to = rst.vars()[1];
  Relation acc = Relation::truth(true);
  for (int k = 0; k <= letter; ++k) {
    acc = rel_and(acc, rename(rst, {{from, var(k)}, {to, var(k + 1)}}));
  }
  const std::string x = var(letter);
  const Relation digit = rel_or(rel_and(dfao_eq(trl, x, 0), atom_const("d", 0)),
                                rel_and(dfao_eq(trl, x, 1), atom_const("d", 1)));
  acc = rel_and(acc, digit);
  acc = rel_and(acc, atom_add("s", var(letter + 1), "d"));
  std::vector<std::string> hidden{"d"};
  for (int k = 1; k <= letter + 1; ++k) hidden.push_back(var(k));
  return rel_exists(acc, hidden);
}

Relation build_tribfac(int letter, const Relation& tribsync) {
  Env env;
  env.relations["tribsync" + std::to_string(letter)] = tribsync;
  return compile(tribfac_formula(letter), env);
}

bool is_functional(const Relation& r, const std::string& out) {
  const auto& vars = r.vars();
  if (std::find(vars.begin(), vars.end(), out) == vars.end()) return false;
  const std::string alt = out + "#alt";
  // Total: the projection covers every input tuple.
  Relation domain = rel_exists(r, {out});
  if (!is_empty(rel_not(domain))) return false;
  // Single-valued: no input has two distinct outputs.
  Relation twin = rename(r, {{out, alt}});
  Relation clash = rel_and(rel_and(r, twin), rel_not(atom_eq(out, alt)));
  return is_empty(clash);
}

CoordinateRange compute_range(int letter, const Relation& tribfac) {
  Env env;
  env.relations["tribfac" + std::to_string(letter)] = tribfac;
  auto max_of = [&](const std::string& text, const char* side) {
    const Relation r = compile(text, env);
    auto vals = values(r, 4096);
    if (!vals) {
      throw PipelineError("ranges", std::string(side) + " range of letter " + std::to_string(letter) +
                                        " is unbounded");
    }
    std::uint64_t best = 0;
    for (const auto& v : *vals) best = std::max(best, v.at(0));
    return static_cast<int>(best);
  };
  return {max_of(posrange_formula(letter), "positive"), max_of(negrange_formula(letter), "negative")};
}

namespace {

Env fac_env(const std::array<Relation, 3>& tribfac) {
  Env env;
  for (int a = 0; a < 3; ++a) env.relations["tribfac" + std::to_string(a)] = tribfac[a];
  return env;
}

}  // namespace

Relation build_validtriples(const std::array<Relation, 3>& tribfac,
                            const std::array<CoordinateRange, 3>& ranges) {
  return compile(validtriples_formula(ranges), fac_env(tribfac));
}

RangeSetA compute_valid_triples(const Relation& validtriples,
                                const std::array<CoordinateRange, 3>& ranges) {
  auto vals = values(validtriples, 512);
  if (!vals) throw PipelineError("validtriples", "more than 512 triples (or infinitely many)");
  RangeSetA out;
  for (const auto& t : *vals) {
    out.push_back({static_cast<int>(t[0]) - ranges[0].max_negative,
                   static_cast<int>(t[1]) - ranges[1].max_negative,
                   static_cast<int>(t[2]) - ranges[2].max_negative});
  }
  std::sort(out.begin(), out.end());
  if (out.size() > 16) throw PipelineError("validtriples", "range set too large for a 16-bit mask");
  return out;
}

Relation build_triple_predicate(const RelativeVector& v, const std::array<Relation, 3>& tribfac) {
  return compile(triple_formula(v), fac_env(tribfac));
}

Relation build_occurrence(const Relation& predicate, const std::string& name) {
  Env env;
  env.relations[name] = predicate;
  return compile(occurrence_formula(name), env);
}

Relation build_subset_equiv(const std::map<std::string, Relation>& predicates,
                            const RangeSetA& range) {
  Env env;
  std::vector<std::string> names;
  for (const auto& v : range) {
    names.push_back(triple_name(v));
    env.relations[names.back()] = predicates.at(names.back());
  }
  return compile(subset_equiv_formula(names), env);
}

namespace {

SubsetOfA subset_at(const std::vector<Relation>& occurrences, std::uint64_t n) {
  std::uint16_t mask = 0;
  for (std::size_t j = 0; j < occurrences.size(); ++j) {
    if (occurrences[j].contains({n})) mask |= static_cast<std::uint16_t>(1u << j);
  }
  return SubsetOfA(mask);
}

}  // namespace

ClassTable discover_subsets(const RangeSetA& range, const Relation& subset_equiv,
                            const std::vector<Relation>& occurrences) {
  if (occurrences.size() != range.size()) {
    throw PipelineError("classes", "need one occurrence relation per element of A");
  }
  const auto zero = std::find(range.begin(), range.end(), RelativeVector{0, 0, 0});
  if (zero == range.end()) throw PipelineError("classes", "(0,0,0) missing from A");
  const std::size_t zero_bit = static_cast<std::size_t>(zero - range.begin());

  const Relation equiv = rename(subset_equiv, {{subset_equiv.vars()[0], "m"}, {subset_equiv.vars()[1], "n"}});
  auto class_of = [&](std::uint64_t rep) {
    return rel_exists(rel_and(atom_const("m", rep), equiv), {"m"});
  };

  ClassTable table;
  table.range = range;
  auto add_row = [&](std::uint64_t n) {
    const SubsetOfA s = subset_at(occurrences, n);
    if (!s.contains(zero_bit)) throw PipelineError("classes", "A_" + std::to_string(n) + " lacks (0,0,0)");
    if (table.find(s)) {
      throw PipelineError("classes", "A_" + std::to_string(n) + " repeats an earlier subset");
    }
    table.rows.push_back({n, s, s.size()});
  };

  add_row(0);
  Relation covered = class_of(0);
  for (int iter = 0;; ++iter) {
    if (iter > 512) throw PipelineError("classes", "more than 512 iterations");
    const Relation last = rel_not(covered);
    auto word = shortest_accepted(last.automaton());
    if (!word) break;
    std::string bits = format_word(*word, 1);
    bits.erase(0, std::min(bits.find('1'), bits.size()));
    table.final_missing_word = bits;
    const std::uint64_t n = from_trib(bits);
    add_row(n);
    covered = rel_or(covered, class_of(n));
  }
  return table;
}

std::pair<Dfao, Dfao> assemble_dfaos(const ClassTable& table,
                                     const std::vector<Relation>& occurrences) {
  const std::size_t k = occurrences.size();
  for (const auto& r : occurrences) {
    if (r.arity() != 1) throw PipelineError("dfaos", "occurrence relations must have one variable");
  }
  // Direct product over the occurrence automata, 1-track alphabet.
  std::vector<std::vector<State>> tuples;
  std::map<std::vector<State>, State> ids;
  std::vector<State> delta;
  std::vector<int> tau1, tau2;
  auto intern = [&](std::vector<State> t) -> State {
    auto [it, inserted] = ids.try_emplace(t, static_cast<State>(tuples.size()));
    if (!inserted) return it->second;
    std::uint16_t mask = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (occurrences[j].automaton().accepting(t[j])) mask |= static_cast<std::uint16_t>(1u << j);
    }
    if (mask == 0) {
      tau1.push_back(kDeadOutput);
      tau2.push_back(kDeadOutput);
    } else {
      const ClassRow* row = table.find(SubsetOfA(mask));
      if (!row) {
        throw PipelineError("dfaos", "reachable subset " + SubsetOfA(mask).to_string(table.range) +
                                         " is not in the class table");
      }
      tau1.push_back(static_cast<int>(row->min_index));
      tau2.push_back(row->cardinality);
    }
    tuples.push_back(std::move(t));
    return it->second;
  };
  std::vector<State> init;
  for (const auto& r : occurrences) init.push_back(r.automaton().initial());
  intern(init);
  for (std::size_t cur = 0; cur < tuples.size(); ++cur) {
    for (Symbol s = 0; s < 2; ++s) {
      std::vector<State> t(k);
      for (std::size_t j = 0; j < k; ++j) t[j] = occurrences[j].automaton().next(tuples[cur][j], s);
      const State id = intern(std::move(t));
      delta.push_back(id);
    }
  }
  Dfao tras = minimize(Dfao(TrackSignature(1), delta, tau1, 0));
  Dfao trac = minimize(Dfao(TrackSignature(1), delta, tau2, 0));
  return {std::move(tras), std::move(trac)};
}

bool check_infinitude(const Dfao& trac, int value) {
  return has_infinitely_many_canonical(trac.output_language(value));
}

bool check_subset_infinitude(const Dfao& tras, const ClassRow& row) {
  return has_infinitely_many_canonical(tras.output_language(static_cast<int>(row.min_index)));
}

StateCounts state_counts(const Automaton& a) {
  const Automaton m = minimize(a);
  return {m.state_count(), m.state_count() - (m.dead_state() ? 1 : 0)};
}

// --- Staged build -----------------------------------------------------------

const Relation& get_relation(const ArtifactMap& m, const std::string& name) {
  auto it = m.find(name);
  if (it == m.end() || !std::holds_alternative<Relation>(it->second)) {
    throw PipelineError(name, "relation artifact missing");
  }
  return std::get<Relation>(it->second);
}

const Dfao& get_dfao(const ArtifactMap& m, const std::string& name) {
  auto it = m.find(name);
  if (it == m.end() || !std::holds_alternative<Dfao>(it->second)) {
    throw PipelineError(name, "DFAO artifact missing");
  }
  return std::get<Dfao>(it->second);
}

const std::string& get_json(const ArtifactMap& m, const std::string& name) {
  auto it = m.find(name);
  if (it == m.end() || !std::holds_alternative<JsonDoc>(it->second)) {
    throw PipelineError(name, "JSON artifact missing");
  }
  return std::get<JsonDoc>(it->second).text;
}

namespace {

std::array<Relation, 3> facs(const ArtifactMap& m) {
  return {get_relation(m, "tribfac0"), get_relation(m, "tribfac1"), get_relation(m, "tribfac2")};
}

std::vector<Relation> occurrences(const ArtifactMap& m, const RangeSetA& range) {
  std::vector<Relation> out;
  for (const auto& v : range) out.push_back(get_relation(m, "occ_" + triple_name(v)));
  return out;
}

}  // namespace

std::vector<Stage> pipeline_stages() {
  std::vector<Stage> s;
  s.push_back({"base", {}, [](const ArtifactMap&) {
                 ArtifactMap out;
                 out["rst"] = Relation(shift_rel(), {"m", "n"});
                 out["TRL"] = build_trl();
                 out["TR"] = build_tr();
                 return out;
               }});
  s.push_back({"tribsync", {"base"}, [](const ArtifactMap& m) {
                 ArtifactMap out;
                 std::vector<Relation> sync;
                 for (int a = 0; a < 3; ++a) {
                   Relation r = build_tribsync(a, get_relation(m, "rst"), get_dfao(m, "TRL"));
                   if (!is_functional(r, "s")) {
                     throw PipelineError("tribsync", "tribsync" + std::to_string(a) + " is not functional");
                   }
                   out["tribsync" + std::to_string(a)] = r;
                   sync.push_back(std::move(r));
                 }
                 Relation all = rel_and(rel_and(rename(sync[0], {{"s", "x"}}), rename(sync[1], {{"s", "y"}})),
                                        rename(sync[2], {{"s", "z"}}));
                 out["tribsync_all"] = std::move(all);
                 return out;
               }});
  s.push_back({"tribfac", {"tribsync"}, [](const ArtifactMap& m) {
                 ArtifactMap out;
                 for (int a = 0; a < 3; ++a) {
                   const std::string name = "tribfac" + std::to_string(a);
                   Relation r = build_tribfac(a, get_relation(m, "tribsync" + std::to_string(a)));
                   if (!is_functional(r, "s")) throw PipelineError("tribfac", name + " is not functional");
                   out[name] = std::move(r);
                 }
                 return out;
               }});
  s.push_back({"ranges", {"tribfac"}, [](const ArtifactMap& m) {
                 ArtifactMap out;
                 std::array<CoordinateRange, 3> ranges;
                 for (int a = 0; a < 3; ++a) {
                   const std::string suffix = std::to_string(a);
                   Env env;
                   env.relations["tribfac" + suffix] = get_relation(m, "tribfac" + suffix);
                   out["posrange" + suffix] = compile(posrange_formula(a), env);
                   out["negrange" + suffix] = compile(negrange_formula(a), env);
                   ranges[a] = compute_range(a, get_relation(m, "tribfac" + suffix));
                 }
                 out["ranges"] = JsonDoc{to_json(ranges)};
                 return out;
               }});
  s.push_back({"validtriples", {"tribfac", "ranges"}, [](const ArtifactMap& m) {
                 ArtifactMap out;
                 const auto ranges = ranges_from_json(get_json(m, "ranges"));
                 Relation vt = build_validtriples(facs(m), ranges);
                 out["A"] = JsonDoc{to_json(compute_valid_triples(vt, ranges))};
                 out["validtriples"] = std::move(vt);
                 return out;
               }});
  s.push_back({"predicates", {"tribfac", "validtriples"}, [](const ArtifactMap& m) {
                 ArtifactMap out;
                 const auto f = facs(m);
                 for (const auto& v : range_set_from_json(get_json(m, "A"))) {
                   const std::string name = triple_name(v);
                   Relation p = build_triple_predicate(v, f);
                   out["occ_" + name] = build_occurrence(p, name);
                   out[name] = std::move(p);
                 }
                 return out;
               }});
  s.push_back({"subseteq", {"predicates"}, [](const ArtifactMap& m) {
                 const RangeSetA range = range_set_from_json(get_json(m, "A"));
                 std::map<std::string, Relation> preds;
                 for (const auto& v : range) preds[triple_name(v)] = get_relation(m, triple_name(v));
                 ArtifactMap out;
                 out["subseteq"] = build_subset_equiv(preds, range);
                 return out;
               }});
  s.push_back({"classes", {"subseteq", "predicates"}, [](const ArtifactMap& m) {
                 const RangeSetA range = range_set_from_json(get_json(m, "A"));
                 const Relation& equiv = get_relation(m, "subseteq");
                 ClassTable table = discover_subsets(range, equiv, occurrences(m, range));
                 // Reconstruct the final "missing" automaton from its formula text.
                 Env env;
                 env.relations["subset"] = equiv;
                 std::vector<std::uint64_t> reps;
                 for (std::size_t j = 0; j + 1 < table.rows.size(); ++j) reps.push_back(table.rows[j].min_index);
                 env.relations["last"] = compile(last_formula(reps), env);
                 ArtifactMap out;
                 out["missing"] = compile(missing_formula(), env);
                 out["classes"] = JsonDoc{to_json(table)};
                 return out;
               }});
  s.push_back({"dfaos", {"classes", "predicates"}, [](const ArtifactMap& m) {
                 const ClassTable table = class_table_from_json(get_json(m, "classes"));
                 auto [tras, trac] = assemble_dfaos(table, occurrences(m, table.range));
                 ArtifactMap out;
                 out["TRAS"] = std::move(tras);
                 out["TRAC"] = std::move(trac);
                 return out;
               }});
  return s;
}

ArtifactMap run_pipeline() {
  ArtifactMap all;
  for (const auto& stage : pipeline_stages()) {
    ArtifactMap produced;
    try {
      produced = stage.build(all);
    } catch (const PipelineError&) {
      throw;
    } catch (const std::exception& e) {
      throw PipelineError(stage.name, e.what());
    }
    for (auto& [k, v] : produced) all.insert_or_assign(k, std::move(v));
  }
  return all;
}

Env env_from_artifacts(const ArtifactMap& artifacts) {
  Env env;
  for (const auto& [name, art] : artifacts) {
    if (const auto* r = std::get_if<Relation>(&art)) {
      env.relations[name] = *r;
    } else if (const auto* d = std::get_if<Dfao>(&art)) {
      if (d->tracks() == 1) env.words.add(name, *d);
    }
  }
  if (auto it = env.relations.find("subseteq"); it != env.relations.end()) {
    env.relations["subset"] = it->second;
  }
  return env;
}

}  // namespace tribab

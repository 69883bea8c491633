#include "tribab/text_format.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "json.hpp"
#include "machine.hpp"

namespace tribab {

namespace {

constexpr const char* kToken = "msd_trib";

detail::Machine machine_of(const Dfao& d) {
  return {d.signature(), d.transitions(), d.outputs(), d.initial()};
}

constexpr State kNoState = ~State{0};

// BFS order from the initial state, never entering `skip`.
std::vector<State> bfs_order(const detail::Machine& m, State skip) {
  const std::size_t k = m.sig.symbol_count();
  std::vector<State> order{m.initial};
  std::vector<bool> seen(m.states(), false);
  seen[m.initial] = true;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (std::size_t s = 0; s < k; ++s) {
      const State t = m.delta[order[head] * k + s];
      if (seen[t] || t == skip) continue;
      seen[t] = true;
      order.push_back(t);
    }
  }
  return order;
}

// The sink to leave out, unless it is the initial state.
State omitted(const detail::Machine& m, std::optional<State> dead) {
  const State d = dead.value_or(kNoState);
  return d == m.initial ? kNoState : d;
}

std::string column_digits(Symbol s, int tracks, const char* sep) {
  std::string out;
  for (int j = 0; j < tracks; ++j) {
    if (j) out += sep;
    out += ((s >> j) & 1u) ? '1' : '0';
  }
  return out;
}

std::string write_walnut(const detail::Machine& m, std::optional<State> dead) {
  const State skip = omitted(m, dead);
  const std::vector<State> order = bfs_order(m, skip);
  std::vector<State> id(m.states(), 0);
  for (std::size_t j = 0; j < order.size(); ++j) id[order[j]] = static_cast<State>(j);
  const int tracks = m.sig.tracks();
  const std::size_t k = m.sig.symbol_count();
  std::ostringstream out;
  for (int j = 0; j < tracks; ++j) out << (j ? " " : "") << kToken;
  out << '\n';
  for (std::size_t j = 0; j < order.size(); ++j) {
    const State q = order[j];
    if (j) out << '\n';
    out << j << ' ' << m.label[q] << '\n';
    for (std::size_t s = 0; s < k; ++s) {
      const State t = m.delta[q * k + s];
      if (t == skip) continue;
      const std::string digits = column_digits(static_cast<Symbol>(s), tracks, " ");
      out << digits << (digits.empty() ? "" : " ") << "-> " << id[t] << '\n';
    }
  }
  return out.str();
}

std::optional<State> plain_dead(const Automaton& a) { return a.dead_state(); }

long parse_int(const std::string& tok, int line) {
  try {
    std::size_t used = 0;
    const long v = std::stol(tok, &used);
    if (used != tok.size()) throw FormatError("bad integer '" + tok + "'", line);
    return v;
  } catch (const std::logic_error&) {
    throw FormatError("bad integer '" + tok + "'", line);
  }
}

// Returns the machine with missing transitions set to `missing` (not yet a state).
detail::Machine read_walnut(const std::string& text, bool& incomplete) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  if (!std::getline(in, line)) throw FormatError("empty input", 1);
  ++lineno;
  int tracks = 0;
  {
    std::istringstream head(line);
    std::string tok;
    while (head >> tok) {
      if (tok != kToken) throw FormatError("unsupported numeration '" + tok + "'", lineno);
      ++tracks;
    }
  }
  if (tracks > kMaxTracks) throw FormatError("too many tracks", lineno);
  const TrackSignature sig(tracks);
  const std::size_t k = sig.symbol_count();
  constexpr State kUnset = ~State{0};

  std::map<long, std::pair<int, std::vector<State>>> states;  // id -> label, row
  std::vector<std::pair<State*, std::pair<long, int>>> pending;
  std::vector<State>* row = nullptr;
  long current = -1;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    const auto arrow = std::find(toks.begin(), toks.end(), "->");
    if (arrow == toks.end()) {
      if (toks.size() != 2) throw FormatError("expected '<id> <output>'", lineno);
      current = parse_int(toks[0], lineno);
      if (current < 0) throw FormatError("negative state id", lineno);
      auto [it, fresh] = states.try_emplace(current, static_cast<int>(parse_int(toks[1], lineno)),
                                            std::vector<State>(k, kUnset));
      if (!fresh) throw FormatError("state " + toks[0] + " declared twice", lineno);
      row = &it->second.second;
      continue;
    }
    if (!row) throw FormatError("transition before any state header", lineno);
    if (arrow - toks.begin() != tracks || toks.end() - arrow != 2) {
      throw FormatError("expected " + std::to_string(tracks) + " digits, '->' and a target", lineno);
    }
    Symbol s = 0;
    for (int j = 0; j < tracks; ++j) {
      if (toks[j] == "1") {
        s |= Symbol{1} << j;
      } else if (toks[j] != "0") {
        throw FormatError("digit must be 0 or 1", lineno);
      }
    }
    if ((*row)[s] != kUnset) throw FormatError("duplicate transition", lineno);
    (*row)[s] = 0;
    pending.push_back({&(*row)[s], {parse_int(toks.back(), lineno), lineno}});
  }
  if (states.empty()) throw FormatError("no states", lineno);
  std::map<long, State> index;
  for (const auto& [id, _] : states) index.emplace(id, static_cast<State>(index.size()));
  if (!index.count(0)) throw FormatError("state 0 missing", lineno);
  for (auto& [slot, target] : pending) {
    auto it = index.find(target.first);
    if (it == index.end()) {
      throw FormatError("unknown target " + std::to_string(target.first), target.second);
    }
    *slot = it->second;
  }
  detail::Machine m{sig, {}, {}, index.at(0)};
  const State missing = static_cast<State>(states.size());
  incomplete = false;
  for (const auto& [id, st] : states) {
    m.label.push_back(st.first);
    for (State t : st.second) {
      if (t == kUnset) {
        incomplete = true;
        t = missing;
      }
      m.delta.push_back(t);
    }
  }
  return m;
}

std::string dot_symbol(Symbol s, int tracks) {
  if (tracks == 1) return column_digits(s, 1, "");
  return "[" + column_digits(s, tracks, " ") + "]";
}

std::string write_dot(const detail::Machine& m, std::optional<State> dead, const std::string& name,
                      bool accept_shapes) {
  const State skip = omitted(m, dead);
  const std::vector<State> order = bfs_order(m, skip);
  std::vector<State> id(m.states(), 0);
  for (std::size_t j = 0; j < order.size(); ++j) id[order[j]] = static_cast<State>(j);
  const std::size_t k = m.sig.symbol_count();
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n  rankdir=LR;\n  init [shape=point];\n  init -> 0;\n";
  for (std::size_t j = 0; j < order.size(); ++j) {
    const int label = m.label[order[j]];
    out << "  " << j << " [label=\"" << j << '/' << label << "\", shape="
        << (accept_shapes && label == 1 ? "doublecircle" : "circle") << "];\n";
  }
  for (std::size_t j = 0; j < order.size(); ++j) {
    std::map<State, std::string> edges;
    for (std::size_t s = 0; s < k; ++s) {
      const State t = m.delta[order[j] * k + s];
      if (t == skip) continue;
      std::string& lbl = edges[id[t]];
      if (!lbl.empty()) lbl += ", ";
      lbl += dot_symbol(static_cast<Symbol>(s), m.sig.tracks());
    }
    for (const auto& [t, lbl] : edges) out << "  " << j << " -> " << t << " [label=\"" << lbl << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

nlohmann::json machine_json(const detail::Machine& m) {
  const std::size_t k = m.sig.symbol_count();
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t q = 0; q < m.states(); ++q) {
    rows.push_back(std::vector<State>(m.delta.begin() + q * k, m.delta.begin() + (q + 1) * k));
  }
  return {{"tracks", m.sig.tracks()}, {"initial", m.initial}, {"state_count", m.states()},
          {"transitions", rows}};
}

}  // namespace

std::string to_walnut(const Automaton& a) { return write_walnut(detail::to_machine(a), plain_dead(a)); }

std::string to_walnut(const Dfao& d) { return write_walnut(machine_of(d), std::nullopt); }

Automaton automaton_from_walnut(const std::string& text) {
  bool incomplete = false;
  detail::Machine m = read_walnut(text, incomplete);
  for (int v : m.label) {
    if (v != 0 && v != 1) throw FormatError("plain automaton outputs must be 0 or 1", 0);
  }
  if (incomplete) {
    m.label.push_back(0);
    m.delta.insert(m.delta.end(), m.sig.symbol_count(), static_cast<State>(m.label.size() - 1));
  }
  return detail::to_automaton(std::move(m));
}

Dfao dfao_from_walnut(const std::string& text) {
  bool incomplete = false;
  detail::Machine m = read_walnut(text, incomplete);
  if (incomplete) throw FormatError("DFAO is missing transitions", 0);
  return Dfao(m.sig, std::move(m.delta), std::move(m.label), m.initial);
}

std::string to_dot(const Automaton& a, const std::string& name) {
  return write_dot(detail::to_machine(a), plain_dead(a), name, true);
}

std::string to_dot(const Dfao& d, const std::string& name) {
  return write_dot(machine_of(d), std::nullopt, name, false);
}

std::string to_json(const Automaton& a, const std::vector<std::string>* vars) {
  nlohmann::json j = machine_json(detail::to_machine(a));
  j["kind"] = vars ? "relation" : "automaton";
  j["live_state_count"] = a.state_count() - (a.dead_state() ? 1 : 0);
  std::vector<int> acc(a.accepting_flags().begin(), a.accepting_flags().end());
  j["accepting"] = acc;
  if (vars) j["vars"] = *vars;
  return j.dump(2);
}

std::string to_json(const Dfao& d) {
  nlohmann::json j = machine_json(machine_of(d));
  j["kind"] = "dfao";
  j["outputs"] = d.outputs();
  return j.dump(2);
}

}  // namespace tribab

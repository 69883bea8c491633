#include "tribab/automaton.hpp"

#include <algorithm>
#include <unordered_map>

#include "machine.hpp"
#include "tribab/dfao.hpp"

namespace tribab {

TrackSignature::TrackSignature(int tracks) : tracks_(tracks) {
  if (tracks < 0 || tracks > kMaxTracks) {
    throw AutomatonError("track count " + std::to_string(tracks) + " outside [0, " +
                         std::to_string(kMaxTracks) + "]");
  }
}

std::string TrackSignature::to_string() const {
  return "{0,1}^" + std::to_string(tracks_);
}

Automaton::Automaton(TrackSignature sig, std::vector<State> delta,
                     std::vector<std::uint8_t> accepting, State initial)
    : sig_(sig), initial_(initial), delta_(std::move(delta)), accepting_(std::move(accepting)) {
  const std::size_t n = accepting_.size();
  if (n == 0) throw AutomatonError("automaton needs at least one state");
  if (delta_.size() != n * sig_.symbol_count()) {
    throw AutomatonError("transition table is incomplete: expected " +
                         std::to_string(n * sig_.symbol_count()) + " entries, got " +
                         std::to_string(delta_.size()));
  }
  if (initial_ >= n) throw AutomatonError("initial state out of range");
  for (State t : delta_) {
    if (t >= n) throw AutomatonError("transition target " + std::to_string(t) + " out of range");
  }
}

Automaton Automaton::empty(TrackSignature sig) {
  return Automaton(sig, std::vector<State>(sig.symbol_count(), 0), {0});
}

Automaton Automaton::universal(TrackSignature sig) {
  return Automaton(sig, std::vector<State>(sig.symbol_count(), 0), {1});
}

bool Automaton::accepts(std::span<const Symbol> word) const {
  State q = initial_;
  for (Symbol a : word) {
    if (a >= symbol_count()) throw AutomatonError("symbol out of range for " + sig_.to_string());
    q = next(q, a);
  }
  return accepting(q);
}

std::optional<State> Automaton::dead_state() const {
  for (State q = 0; q < state_count(); ++q) {
    if (accepting(q)) continue;
    const auto r = row(q);
    if (std::all_of(r.begin(), r.end(), [q](State t) { return t == q; })) return q;
  }
  return std::nullopt;
}

Nfa::Nfa(TrackSignature sig, std::size_t states)
    : signature(sig), accepting(states, 0), successors(states * sig.symbol_count()) {}

State Nfa::add_state(bool accept) {
  accepting.push_back(accept ? 1 : 0);
  successors.resize(accepting.size() * signature.symbol_count());
  return static_cast<State>(accepting.size() - 1);
}

void Nfa::add_transition(State from, Symbol a, State to) {
  if (from >= state_count() || to >= state_count() || a >= signature.symbol_count()) {
    throw AutomatonError("NFA transition out of range");
  }
  successors[from * signature.symbol_count() + a].push_back(to);
}

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<State>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (State s : v) {
      h ^= s;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

// Subset construction. `succ(q, a, out)` appends the a-successors of q.
template <class Accepting, class Succ>
Automaton subset_construct(TrackSignature sig, std::vector<State> init, Accepting&& accepting,
                           Succ&& succ) {
  const std::size_t k = sig.symbol_count();
  std::sort(init.begin(), init.end());
  init.erase(std::unique(init.begin(), init.end()), init.end());

  std::unordered_map<std::vector<State>, State, VecHash> index;
  std::vector<std::vector<State>> subsets;
  std::vector<State> delta;
  std::vector<std::uint8_t> acc;

  auto intern = [&](std::vector<State>&& s) -> State {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    const State id = static_cast<State>(subsets.size());
    bool a = false;
    for (State q : s) a = a || accepting(q);
    acc.push_back(a ? 1 : 0);
    index.emplace(s, id);
    subsets.push_back(std::move(s));
    return id;
  };

  intern(std::move(init));
  std::vector<State> next;
  for (std::size_t cur = 0; cur < subsets.size(); ++cur) {
    for (Symbol a = 0; a < k; ++a) {
      next.clear();
      for (State q : subsets[cur]) succ(q, a, next);
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      delta.push_back(intern(std::vector<State>(next)));
    }
  }
  return Automaton(sig, std::move(delta), std::move(acc), 0);
}

// States from which an accepting state is reachable.
std::vector<std::uint8_t> coreachable(const Automaton& a) {
  const std::size_t n = a.state_count();
  const std::size_t k = a.symbol_count();
  std::vector<std::vector<State>> rev(n);
  for (State q = 0; q < n; ++q) {
    for (Symbol s = 0; s < k; ++s) rev[a.next(q, s)].push_back(q);
  }
  std::vector<std::uint8_t> live(n, 0);
  std::vector<State> stack;
  for (State q = 0; q < n; ++q) {
    if (a.accepting(q)) {
      live[q] = 1;
      stack.push_back(q);
    }
  }
  while (!stack.empty()) {
    const State q = stack.back();
    stack.pop_back();
    for (State p : rev[q]) {
      if (!live[p]) {
        live[p] = 1;
        stack.push_back(p);
      }
    }
  }
  return live;
}

bool eval_op(BoolOp op, bool x, bool y) {
  switch (op) {
    case BoolOp::And: return x && y;
    case BoolOp::Or: return x || y;
    case BoolOp::Xor: return x != y;
    case BoolOp::Implies: return !x || y;
    case BoolOp::Iff: return x == y;
  }
  return false;
}

}  // namespace

Automaton determinize(const Nfa& nfa) {
  const std::size_t k = nfa.signature.symbol_count();
  return minimize(subset_construct(
      nfa.signature, nfa.initial, [&](State q) { return nfa.accepting[q] != 0; },
      [&](State q, Symbol a, std::vector<State>& out) {
        const auto& s = nfa.successors[q * k + a];
        out.insert(out.end(), s.begin(), s.end());
      }));
}

Automaton product(const Automaton& a, const Automaton& b, BoolOp op) {
  if (a.signature() != b.signature()) {
    throw AutomatonError("product of automata with different signatures: " +
                         a.signature().to_string() + " vs " + b.signature().to_string());
  }
  const std::size_t k = a.symbol_count();
  const std::uint64_t nb = b.state_count();
  std::vector<std::uint64_t> pairs;
  std::vector<State> delta;
  std::vector<std::uint8_t> acc;

  const bool dense = a.state_count() * nb <= (std::uint64_t{1} << 24);
  std::vector<State> dense_id;
  std::unordered_map<std::uint64_t, State> sparse_id;
  if (dense) dense_id.assign(a.state_count() * nb, ~State{0});

  auto intern = [&](State p, State q) -> State {
    const std::uint64_t key = p * nb + q;
    State* slot = nullptr;
    if (dense) {
      slot = &dense_id[key];
      if (*slot != ~State{0}) return *slot;
    } else {
      auto it = sparse_id.find(key);
      if (it != sparse_id.end()) return it->second;
    }
    const State id = static_cast<State>(pairs.size());
    if (dense) *slot = id; else sparse_id.emplace(key, id);
    pairs.push_back(key);
    acc.push_back(eval_op(op, a.accepting(p), b.accepting(q)) ? 1 : 0);
    return id;
  };

  intern(a.initial(), b.initial());
  for (std::size_t cur = 0; cur < pairs.size(); ++cur) {
    const State p = static_cast<State>(pairs[cur] / nb);
    const State q = static_cast<State>(pairs[cur] % nb);
    for (Symbol s = 0; s < k; ++s) delta.push_back(intern(a.next(p, s), b.next(q, s)));
  }
  return minimize(Automaton(a.signature(), std::move(delta), std::move(acc), 0));
}

Automaton complement(const Automaton& a) {
  std::vector<std::uint8_t> acc(a.accepting_flags());
  for (auto& f : acc) f = f ? 0 : 1;
  return Automaton(a.signature(), a.transitions(), std::move(acc), a.initial());
}

Automaton project(const Automaton& a, int track) {
  const int k = a.tracks();
  if (track < 0 || track >= k) {
    throw AutomatonError("cannot project track " + std::to_string(track) + " of " +
                         a.signature().to_string());
  }
  const TrackSignature out_sig(k - 1);
  const Symbol low_mask = (Symbol{1} << track) - 1;
  auto expand = [&](Symbol s, Symbol bit) {
    return (s & low_mask) | (bit << track) | ((s & ~low_mask) << 1);
  };
  const auto live = coreachable(a);

  // Leading-zero saturation: start from every state reachable by columns
  // that are zero on all surviving tracks.
  std::vector<State> init;
  {
    std::vector<std::uint8_t> seen(a.state_count(), 0);
    std::vector<State> stack{a.initial()};
    seen[a.initial()] = 1;
    while (!stack.empty()) {
      const State q = stack.back();
      stack.pop_back();
      if (live[q]) init.push_back(q);
      for (Symbol bit : {Symbol{0}, Symbol{1}}) {
        const State t = a.next(q, expand(0, bit));
        if (!seen[t]) {
          seen[t] = 1;
          stack.push_back(t);
        }
      }
    }
  }

  return minimize(subset_construct(
      out_sig, std::move(init), [&](State q) { return a.accepting(q); },
      [&](State q, Symbol s, std::vector<State>& out) {
        const State t0 = a.next(q, expand(s, 0));
        const State t1 = a.next(q, expand(s, 1));
        if (live[t0]) out.push_back(t0);
        if (live[t1]) out.push_back(t1);
      }));
}

Automaton saturate_leading_zeros(const Automaton& a) {
  std::vector<State> init;
  std::vector<std::uint8_t> seen(a.state_count(), 0);
  for (State q = a.initial(); !seen[q]; q = a.next(q, 0)) {
    seen[q] = 1;
    init.push_back(q);
  }
  return minimize(subset_construct(
      a.signature(), std::move(init), [&](State q) { return a.accepting(q); },
      [&](State q, Symbol s, std::vector<State>& out) { out.push_back(a.next(q, s)); }));
}

Automaton reorder_tracks(const Automaton& a, std::span<const int> sources) {
  const int k = a.tracks();
  const int r = static_cast<int>(sources.size());
  const TrackSignature out_sig(r);
  std::vector<int> uses(k, 0);
  for (int src : sources) {
    if (src < -1 || src >= k) {
      throw AutomatonError("reorder_tracks: source track " + std::to_string(src) +
                           " invalid for " + a.signature().to_string());
    }
    if (src >= 0) ++uses[src];
  }
  for (int j = 0; j < k; ++j) {
    if (uses[j] == 0) {
      throw AutomatonError("reorder_tracks: source track " + std::to_string(j) +
                           " is dropped; use project to remove tracks");
    }
  }

  constexpr Symbol kConflict = ~Symbol{0};
  std::vector<Symbol> map(out_sig.symbol_count());
  for (Symbol s = 0; s < out_sig.symbol_count(); ++s) {
    Symbol src_sym = 0;
    Symbol assigned = 0;
    bool ok = true;
    for (int t = 0; t < r && ok; ++t) {
      const int src = sources[t];
      if (src < 0) continue;
      const Symbol bit = (s >> t) & 1u;
      const Symbol m = Symbol{1} << src;
      if (assigned & m) {
        ok = ((src_sym & m) != 0) == (bit != 0);
      } else {
        assigned |= m;
        src_sym |= bit << src;
      }
    }
    map[s] = ok ? src_sym : kConflict;
  }

  const std::size_t n = a.state_count();
  const State dead = static_cast<State>(n);
  std::vector<State> delta((n + 1) * out_sig.symbol_count());
  for (State q = 0; q <= n; ++q) {
    for (Symbol s = 0; s < out_sig.symbol_count(); ++s) {
      delta[q * out_sig.symbol_count() + s] =
          (q == dead || map[s] == kConflict) ? dead : a.next(q, map[s]);
    }
  }
  std::vector<std::uint8_t> acc(a.accepting_flags());
  acc.push_back(0);
  return minimize(Automaton(out_sig, std::move(delta), std::move(acc), a.initial()));
}

bool is_empty(const Automaton& a) {
  std::vector<std::uint8_t> seen(a.state_count(), 0);
  std::vector<State> stack{a.initial()};
  seen[a.initial()] = 1;
  while (!stack.empty()) {
    const State q = stack.back();
    stack.pop_back();
    if (a.accepting(q)) return false;
    for (State t : a.row(q)) {
      if (!seen[t]) {
        seen[t] = 1;
        stack.push_back(t);
      }
    }
  }
  return true;
}

bool language_equal(const Automaton& a, const Automaton& b) {
  if (a.signature() != b.signature()) return false;
  const std::uint64_t nb = b.state_count();
  std::unordered_map<std::uint64_t, bool> seen;
  std::vector<std::pair<State, State>> stack{{a.initial(), b.initial()}};
  seen.emplace(a.initial() * nb + b.initial(), true);
  while (!stack.empty()) {
    auto [p, q] = stack.back();
    stack.pop_back();
    if (a.accepting(p) != b.accepting(q)) return false;
    for (Symbol s = 0; s < a.symbol_count(); ++s) {
      const State pt = a.next(p, s);
      const State qt = b.next(q, s);
      if (seen.emplace(pt * nb + qt, true).second) stack.emplace_back(pt, qt);
    }
  }
  return true;
}

std::vector<PaddedWord> enumerate(const Automaton& a, std::size_t max_len) {
  const auto live = coreachable(a);
  std::vector<PaddedWord> out;
  std::vector<std::pair<PaddedWord, State>> layer;
  if (live[a.initial()]) layer.push_back({{}, a.initial()});
  for (std::size_t len = 0; !layer.empty(); ++len) {
    for (const auto& [w, q] : layer) {
      if (a.accepting(q)) out.push_back(w);
    }
    if (len == max_len) break;
    std::vector<std::pair<PaddedWord, State>> next;
    for (const auto& [w, q] : layer) {
      for (Symbol s = 0; s < a.symbol_count(); ++s) {
        const State t = a.next(q, s);
        if (!live[t]) continue;
        PaddedWord v = w;
        v.push_back(s);
        next.emplace_back(std::move(v), t);
      }
    }
    layer = std::move(next);
  }
  return out;
}

std::optional<PaddedWord> shortest_accepted(const Automaton& a) {
  const std::size_t n = a.state_count();
  constexpr State kNone = ~State{0};
  std::vector<State> parent(n, kNone);
  std::vector<Symbol> via(n, 0);
  std::vector<State> queue{a.initial()};
  parent[a.initial()] = a.initial();
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const State q = queue[head];
    if (a.accepting(q)) {
      PaddedWord w;
      for (State c = q; c != a.initial(); c = parent[c]) w.push_back(via[c]);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (Symbol s = 0; s < a.symbol_count(); ++s) {
      const State t = a.next(q, s);
      if (parent[t] == kNone) {
        parent[t] = q;
        via[t] = s;
        queue.push_back(t);
      }
    }
  }
  return std::nullopt;
}

namespace {

// States reachable by a canonical nonempty word (first column nonzero) that
// can still reach acceptance.
std::vector<std::uint8_t> canonical_useful(const Automaton& a,
                                           const std::vector<std::uint8_t>& live) {
  std::vector<std::uint8_t> seen(a.state_count(), 0);
  std::vector<State> stack;
  for (Symbol s = 1; s < a.symbol_count(); ++s) {
    const State t = a.next(a.initial(), s);
    if (live[t] && !seen[t]) {
      seen[t] = 1;
      stack.push_back(t);
    }
  }
  while (!stack.empty()) {
    const State q = stack.back();
    stack.pop_back();
    for (State t : a.row(q)) {
      if (live[t] && !seen[t]) {
        seen[t] = 1;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

}  // namespace

bool has_infinitely_many_canonical(const Automaton& a) {
  const auto live = coreachable(a);
  const auto useful = canonical_useful(a, live);
  // Kahn's algorithm on the useful subgraph; leftovers lie on a cycle.
  const std::size_t n = a.state_count();
  std::vector<std::size_t> indeg(n, 0);
  std::size_t total = 0;
  for (State q = 0; q < n; ++q) {
    if (!useful[q]) continue;
    ++total;
    for (State t : a.row(q)) {
      if (useful[t]) ++indeg[t];
    }
  }
  std::vector<State> stack;
  for (State q = 0; q < n; ++q) {
    if (useful[q] && indeg[q] == 0) stack.push_back(q);
  }
  std::size_t removed = 0;
  while (!stack.empty()) {
    const State q = stack.back();
    stack.pop_back();
    ++removed;
    for (State t : a.row(q)) {
      if (useful[t] && --indeg[t] == 0) stack.push_back(t);
    }
  }
  return removed != total;
}

std::optional<std::vector<PaddedWord>> canonical_words(const Automaton& a, std::size_t limit) {
  if (has_infinitely_many_canonical(a)) return std::nullopt;
  const auto live = coreachable(a);
  std::vector<PaddedWord> out;
  if (a.accepting(a.initial())) out.push_back({});
  std::vector<std::pair<PaddedWord, State>> layer;
  for (Symbol s = 1; s < a.symbol_count(); ++s) {
    const State t = a.next(a.initial(), s);
    if (live[t]) layer.push_back({{s}, t});
  }
  while (!layer.empty()) {
    std::vector<std::pair<PaddedWord, State>> next;
    for (const auto& [w, q] : layer) {
      if (a.accepting(q)) {
        out.push_back(w);
        if (out.size() > limit) return std::nullopt;
      }
      for (Symbol s = 0; s < a.symbol_count(); ++s) {
        const State t = a.next(q, s);
        if (!live[t]) continue;
        PaddedWord v = w;
        v.push_back(s);
        next.emplace_back(std::move(v), t);
      }
    }
    layer = std::move(next);
  }
  return out;
}

PaddedWord columns_from_tracks(std::span<const std::string> tracks) {
  if (tracks.empty()) return {};
  const std::size_t len = tracks[0].size();
  for (const auto& t : tracks) {
    if (t.size() != len) throw AutomatonError("tracks have unequal length");
  }
  PaddedWord w(len, 0);
  for (std::size_t j = 0; j < tracks.size(); ++j) {
    for (std::size_t i = 0; i < len; ++i) {
      const char c = tracks[j][i];
      if (c != '0' && c != '1') throw AutomatonError(std::string("bad digit '") + c + "'");
      if (c == '1') w[i] |= Symbol{1} << j;
    }
  }
  return w;
}

std::vector<std::string> tracks_from_columns(const PaddedWord& word, int tracks) {
  std::vector<std::string> out(tracks, std::string(word.size(), '0'));
  for (std::size_t i = 0; i < word.size(); ++i) {
    for (int j = 0; j < tracks; ++j) {
      if ((word[i] >> j) & 1u) out[j][i] = '1';
    }
  }
  return out;
}

std::string format_word(const PaddedWord& word, int tracks) {
  const auto t = tracks_from_columns(word, tracks);
  std::string out;
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (j) out += ',';
    out += t[j];
  }
  return out;
}

Dfao::Dfao(TrackSignature sig, std::vector<State> delta, std::vector<int> output, State initial)
    : sig_(sig), initial_(initial), delta_(std::move(delta)), output_(std::move(output)) {
  const std::size_t n = output_.size();
  if (n == 0) throw AutomatonError("DFAO needs at least one state");
  if (delta_.size() != n * sig_.symbol_count()) {
    throw AutomatonError("DFAO transition map is not total");
  }
  if (initial_ >= n) throw AutomatonError("initial state out of range");
  for (State t : delta_) {
    if (t >= n) throw AutomatonError("DFAO transition target out of range");
  }
}

State Dfao::run(std::span<const Symbol> word) const {
  State q = initial_;
  for (Symbol a : word) {
    if (a >= symbol_count()) throw AutomatonError("symbol out of range for " + sig_.to_string());
    q = next(q, a);
  }
  return q;
}

Automaton Dfao::output_language(int value) const {
  std::vector<std::uint8_t> acc(output_.size());
  for (std::size_t q = 0; q < output_.size(); ++q) acc[q] = output_[q] == value ? 1 : 0;
  return minimize(Automaton(sig_, delta_, std::move(acc), initial_));
}

}  // namespace tribab

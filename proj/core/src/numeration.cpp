#include "tribab/numeration.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <tuple>

namespace tribab {

TribBasis::TribBasis() {
  t_[0] = 0;
  t_[1] = 1;
  t_[2] = 1;
  for (std::size_t i = 3; i < kSize; ++i) t_[i] = t_[i - 1] + t_[i - 2] + t_[i - 3];
}

const TribBasis& TribBasis::instance() {
  static const TribBasis basis;
  return basis;
}

TribWord::TribWord(std::string bits) : bits_(std::move(bits)) {
  for (char c : bits_) {
    if (c != '0' && c != '1') throw std::invalid_argument("TribWord: bad digit in '" + bits_ + "'");
  }
}

bool TribWord::is_canonical() const {
  if (!bits_.empty() && bits_.front() == '0') return false;
  return bits_.find("111") == std::string::npos;
}

TribWord TribWord::padded(std::size_t len) const {
  if (len <= bits_.size()) return *this;
  return TribWord(std::string(len - bits_.size(), '0') + bits_);
}

TribWord to_trib(std::uint64_t n) {
  const auto& t = TribBasis::instance();
  if (n == 0) return {};
  std::size_t k = 2;
  while (k + 1 < t.size() && t[k + 1] <= n) ++k;
  std::string bits;
  bits.reserve(k - 1);
  for (std::size_t i = k; i >= 2; --i) {
    if (t[i] <= n) {
      bits.push_back('1');
      n -= t[i];
    } else {
      bits.push_back('0');
    }
  }
  return TribWord(std::move(bits));
}

std::uint64_t from_trib(std::string_view bits) {
  const auto& t = TribBasis::instance();
  const std::size_t r = bits.size();
  std::uint64_t value = 0;
  for (std::size_t j = 0; j < r; ++j) {
    if (bits[j] == '0') continue;
    if (bits[j] != '1') throw std::invalid_argument("from_trib: bad digit");
    const std::size_t weight = r + 1 - j;
    if (weight >= t.size()) throw std::overflow_error("from_trib: word too long");
    value += t[weight];
  }
  return value;
}

PaddedWord encode_tuple(std::span<const std::uint64_t> values, std::size_t min_len) {
  std::vector<std::string> tracks;
  std::size_t len = min_len;
  for (auto v : values) {
    tracks.push_back(to_trib(v).bits());
    len = std::max(len, tracks.back().size());
  }
  for (auto& s : tracks) s.insert(0, len - s.size(), '0');
  if (tracks.empty()) return PaddedWord(len, 0);
  return columns_from_tracks(tracks);
}

std::vector<std::uint64_t> decode_tuple(const PaddedWord& word, int tracks) {
  std::vector<std::uint64_t> out;
  for (const auto& s : tracks_from_columns(word, tracks)) out.push_back(from_trib(s));
  return out;
}

namespace {

// Incremental builder for automata whose states are discovered by BFS over
// an ordered key type. `step(key, symbol)` returns nullopt for the dead state.
template <class Key, class Step, class Accept>
Automaton explore(TrackSignature sig, Key start, Step&& step, Accept&& accept) {
  std::map<Key, State> ids;
  std::vector<Key> keys;
  std::vector<State> delta;
  std::vector<std::uint8_t> acc;
  // State 0 is the dead state.
  keys.push_back(start);
  acc.push_back(0);
  auto intern = [&](const Key& k) {
    auto [it, inserted] = ids.try_emplace(k, static_cast<State>(keys.size()));
    if (inserted) {
      keys.push_back(k);
      acc.push_back(accept(k) ? 1 : 0);
    }
    return it->second;
  };
  const State init = intern(start);
  delta.assign(sig.symbol_count(), 0);
  for (std::size_t cur = 1; cur < keys.size(); ++cur) {
    const Key k = keys[cur];
    for (Symbol s = 0; s < sig.symbol_count(); ++s) {
      auto next = step(k, s);
      delta.push_back(next ? intern(*next) : 0);
    }
  }
  return minimize(Automaton(sig, std::move(delta), std::move(acc), init));
}

int bump(int ones, Symbol bit) { return bit ? ones + 1 : 0; }

}  // namespace

Automaton valid_dfa() { return valid_tracks(1, 1); }

Automaton valid_tracks(int tracks, std::uint32_t mask) {
  const TrackSignature sig(tracks);
  using Key = std::vector<int>;
  return explore(
      sig, Key(tracks, 0),
      [&](const Key& k, Symbol s) -> std::optional<Key> {
        Key n(k);
        for (int j = 0; j < tracks; ++j) {
          if (!((mask >> j) & 1u)) continue;
          n[j] = bump(k[j], (s >> j) & 1u);
          if (n[j] == 3) return std::nullopt;
        }
        return n;
      },
      [](const Key&) { return true; });
}

Automaton build_adder_with_bound(int bound) {
  // Key: discrepancies of the three shifted-weight prefix values of x - y - z,
  // then the trailing-ones counters of x, y, z.
  using Key = std::array<std::int64_t, 6>;
  return explore(
      TrackSignature(3), Key{0, 0, 0, 0, 0, 0},
      [bound](const Key& k, Symbol s) -> std::optional<Key> {
        const Symbol dx = s & 1u, dy = (s >> 1) & 1u, dz = (s >> 2) & 1u;
        Key n{};
        n[3] = bump(static_cast<int>(k[3]), dx);
        n[4] = bump(static_cast<int>(k[4]), dy);
        n[5] = bump(static_cast<int>(k[5]), dz);
        if (n[3] == 3 || n[4] == 3 || n[5] == 3) return std::nullopt;
        const std::int64_t d = static_cast<std::int64_t>(dx) - dy - dz;
        n[0] = k[1];
        n[1] = k[2] + d;
        n[2] = k[0] + k[1] + k[2] + d;
        for (int i = 0; i < 3; ++i) {
          if (std::llabs(n[i]) > bound) return std::nullopt;
        }
        return n;
      },
      [](const Key& k) { return k[2] == 0; });
}

Automaton build_adder(AdderOptions opts) {
  for (int b = opts.bound; b <= opts.max_bound; b *= 2) {
    Automaton lo = build_adder_with_bound(b);
    Automaton hi = build_adder_with_bound(b + 4);
    if (isomorphic(lo, hi)) return lo;
  }
  throw AutomatonError("adder construction did not stabilize up to bound " +
                       std::to_string(opts.max_bound));
}

Automaton eq_rel() {
  using Key = std::array<int, 2>;
  return explore(
      TrackSignature(2), Key{0, 0},
      [](const Key& k, Symbol s) -> std::optional<Key> {
        const Symbol x = s & 1u, y = (s >> 1) & 1u;
        if (x != y) return std::nullopt;
        const int o = bump(k[0], x);
        if (o == 3) return std::nullopt;
        return Key{o, o};
      },
      [](const Key&) { return true; });
}

Automaton lt_rel() {
  // Key: (decided x<y, ones in x, ones in y). Equal-length valid words
  // compare numerically as they compare lexicographically.
  using Key = std::array<int, 3>;
  return explore(
      TrackSignature(2), Key{0, 0, 0},
      [](const Key& k, Symbol s) -> std::optional<Key> {
        const Symbol x = s & 1u, y = (s >> 1) & 1u;
        Key n{k[0], bump(k[1], x), bump(k[2], y)};
        if (n[1] == 3 || n[2] == 3) return std::nullopt;
        if (k[0] == 0) {
          if (x > y) return std::nullopt;
          if (x < y) n[0] = 1;
        }
        return n;
      },
      [](const Key& k) { return k[0] == 1; });
}

Automaton leq_rel() { return product(eq_rel(), lt_rel(), BoolOp::Or); }

Automaton shift_rel() {
  // Key: (previous digit of m, trailing ones of m). Track 0 is m, track 1 is n.
  using Key = std::array<int, 2>;
  return explore(
      TrackSignature(2), Key{0, 0},
      [](const Key& k, Symbol s) -> std::optional<Key> {
        const int m = static_cast<int>(s & 1u), n = static_cast<int>((s >> 1) & 1u);
        if (n != k[0]) return std::nullopt;
        const int o = bump(k[1], static_cast<Symbol>(m));
        if (o == 3) return std::nullopt;
        return Key{m, o};
      },
      [](const Key&) { return true; });
}

Automaton constant_rel(std::uint64_t c) {
  const std::string w = to_trib(c).bits();
  // Key: number of digits of w matched so far.
  return explore(
      TrackSignature(1), std::size_t{0},
      [&w](std::size_t i, Symbol s) -> std::optional<std::size_t> {
        const char d = s ? '1' : '0';
        if (i == 0 && d == '0') return 0;
        if (i < w.size() && w[i] == d) return i + 1;
        return std::nullopt;
      },
      [&w](std::size_t i) { return i == w.size(); });
}

}  // namespace tribab

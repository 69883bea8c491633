#pragma once

// Tribonacci numeration: T_0 = 0, T_1 = T_2 = 1, T_n = T_{n-1} + T_{n-2} + T_{n-3}.
// A binary word e_1 ... e_r denotes sum e_i * T_{r+2-i}; the canonical
// representation has no factor 111 and no leading zero (0 is the empty word).

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "tribab/automaton.hpp"

namespace tribab {

class TribBasis {
 public:
  static constexpr std::size_t kSize = 65;

  static const TribBasis& instance();
  std::uint64_t operator[](std::size_t i) const { return t_.at(i); }
  std::size_t size() const { return kSize; }

 private:
  TribBasis();
  std::array<std::uint64_t, kSize> t_{};
};

/// msd-first digit string; need not be canonical.
class TribWord {
 public:
  TribWord() = default;
  explicit TribWord(std::string bits);

  const std::string& bits() const { return bits_; }
  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool is_canonical() const;
  /// Left-pad with zeros to `len` digits.
  TribWord padded(std::size_t len) const;

  friend bool operator==(const TribWord&, const TribWord&) = default;

 private:
  std::string bits_;
};

TribWord to_trib(std::uint64_t n);
std::uint64_t from_trib(std::string_view bits);
inline std::uint64_t from_trib(const TribWord& w) { return from_trib(w.bits()); }

/// Encode a tuple of naturals as equal-length padded columns (track j holds
/// values[j]). Pads to at least `min_len`.
PaddedWord encode_tuple(std::span<const std::uint64_t> values, std::size_t min_len = 0);
std::vector<std::uint64_t> decode_tuple(const PaddedWord& word, int tracks);

/// 1-track automaton for binary words with no factor 111.
Automaton valid_dfa();

/// k-track automaton requiring the tracks in `mask` to avoid 111; other
/// tracks are unconstrained.
Automaton valid_tracks(int tracks, std::uint32_t mask);

struct AdderOptions {
  int bound = 16;
  int max_bound = 1024;
};

/// Raw discrepancy construction of {(x,y,z) : x = y + z} with the given
/// pruning bound; no stabilization check.
Automaton build_adder_with_bound(int bound);

/// Addition relation, tracks (x, y, z) with x = y + z. Throws if the
/// language still changes between bound B and B+4 at max_bound.
Automaton build_adder(AdderOptions opts = {});

Automaton eq_rel();   ///< (x, y): x = y
Automaton lt_rel();   ///< (x, y): x < y
Automaton leq_rel();  ///< (x, y): x <= y

/// rst(m, n): (n)_T is (m)_T with its last digit removed.
Automaton shift_rel();

/// 1-track singleton {c}, closed under leading zeros.
Automaton constant_rel(std::uint64_t c);

}  // namespace tribab

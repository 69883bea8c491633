#pragma once

// Automaton-free ground truth for the Tribonacci word: morphism iteration,
// prefix-sum Parikh vectors and direct counting of relative Parikh vectors.

#include <array>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tribab {

struct RelativeVector {
  int d0 = 0, d1 = 0, d2 = 0;

  friend auto operator<=>(const RelativeVector&, const RelativeVector&) = default;
  std::string to_string() const;
};

struct ParikhVector {
  std::uint64_t c0 = 0, c1 = 0, c2 = 0;

  std::uint64_t length() const { return c0 + c1 + c2; }
  friend bool operator==(const ParikhVector&, const ParikhVector&) = default;
};

RelativeVector operator-(const ParikhVector& a, const ParikhVector& b);

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 0 -> 01, 1 -> 02, 2 -> 0.
struct Morphism {
  std::array<std::string, 3> images{"01", "02", "0"};
  std::string apply(const std::string& w) const;
};

/// Prefix of the fixed point, exactly `len` letters ('0', '1', '2').
std::string generate(std::size_t len);

class TribOracle {
 public:
  /// Precompute a prefix of length `len` with prefix-sum tables.
  explicit TribOracle(std::size_t len);

  std::size_t length() const { return word_.size(); }
  const std::string& word() const { return word_; }

  ParikhVector prefix_parikh(std::size_t n) const;
  ParikhVector factor_parikh(std::size_t i, std::size_t n) const;

  /// {factor_parikh(i,n) - prefix_parikh(n) : 0 <= i <= window}. Throws if
  /// the set seen up to window/2 differs from the full set.
  std::vector<RelativeVector> relative_set(std::size_t n, std::size_t window) const;
  std::vector<RelativeVector> relative_set(std::size_t n) const {
    return relative_set(n, default_window(n));
  }
  std::size_t abelian_complexity(std::size_t n, std::size_t window) const {
    return relative_set(n, window).size();
  }
  std::size_t abelian_complexity(std::size_t n) const { return relative_set(n).size(); }

  /// max(10^6, 1000 n).
  static std::size_t default_window(std::size_t n);

  /// Relative sets for every n in [0, max_n] using window(n) = factor*n + slack,
  /// with the same half-window stabilization check.
  std::vector<std::vector<RelativeVector>> sweep(std::size_t max_n, std::size_t factor = 12,
                                                 std::size_t slack = 64) const;

  /// Prefix length needed by sweep().
  static std::size_t sweep_length(std::size_t max_n, std::size_t factor = 12,
                                  std::size_t slack = 64);

 private:
  std::string word_;
  std::vector<std::uint32_t> count0_, count1_;
};

/// CSV rows "n,complexity,subset" where subset lists vectors separated by ';'.
void write_complexity_csv(std::ostream& out,
                          const std::vector<std::vector<RelativeVector>>& sets);

}  // namespace tribab

#include "tribab/oracle.hpp"

#include <algorithm>
#include <array>

namespace tribab {

std::string RelativeVector::to_string() const {
  return "(" + std::to_string(d0) + "," + std::to_string(d1) + "," + std::to_string(d2) + ")";
}

RelativeVector operator-(const ParikhVector& a, const ParikhVector& b) {
  auto diff = [](std::uint64_t x, std::uint64_t y) {
    return static_cast<int>(static_cast<std::int64_t>(x) - static_cast<std::int64_t>(y));
  };
  return {diff(a.c0, b.c0), diff(a.c1, b.c1), diff(a.c2, b.c2)};
}

std::string Morphism::apply(const std::string& w) const {
  std::string out;
  out.reserve(w.size() * 2);
  for (char c : w) out += images.at(static_cast<std::size_t>(c - '0'));
  return out;
}

std::string generate(std::size_t len) {
  if (len == 0) throw OracleError("generate: length must be positive");
  const Morphism m;
  std::string w = "0";
  while (w.size() < len) w = m.apply(w);
  w.resize(len);
  return w;
}

TribOracle::TribOracle(std::size_t len)
    : word_(generate(len)), count0_(len + 1, 0), count1_(len + 1, 0) {
  for (std::size_t i = 0; i < len; ++i) {
    count0_[i + 1] = count0_[i] + (word_[i] == '0');
    count1_[i + 1] = count1_[i] + (word_[i] == '1');
  }
}

ParikhVector TribOracle::prefix_parikh(std::size_t n) const {
  if (n > length()) {
    throw OracleError("prefix_parikh(" + std::to_string(n) + ") needs a prefix of length " +
                      std::to_string(n) + ", have " + std::to_string(length()));
  }
  const std::uint64_t c0 = count0_[n], c1 = count1_[n];
  return {c0, c1, n - c0 - c1};
}

ParikhVector TribOracle::factor_parikh(std::size_t i, std::size_t n) const {
  if (i + n > length()) {
    throw OracleError("factor_parikh(" + std::to_string(i) + "," + std::to_string(n) +
                      ") needs a prefix of length " + std::to_string(i + n) + ", have " +
                      std::to_string(length()));
  }
  const std::uint64_t c0 = count0_[i + n] - count0_[i];
  const std::uint64_t c1 = count1_[i + n] - count1_[i];
  return {c0, c1, n - c0 - c1};
}

std::size_t TribOracle::default_window(std::size_t n) {
  return std::max<std::size_t>(1'000'000, 1000 * n);
}

namespace {

constexpr int kRadius = 32;

}  // namespace

std::vector<RelativeVector> TribOracle::relative_set(std::size_t n, std::size_t window) const {
  if (n + window >= count0_.size()) {
    throw OracleError("relative_set(" + std::to_string(n) + ") with window " +
                      std::to_string(window) + " needs a prefix of length " +
                      std::to_string(n + window));
  }
  // f(i+1,n) - f(i,n) depends only on the letters leaving and entering the
  // window, so the (d0, d1) cell index moves by a table lookup per step.
  constexpr int kSide = 2 * kRadius;
  static constexpr std::array<int, 9> kStep = [] {
    std::array<int, 9> t{};
    for (int in = 0; in < 3; ++in) {
      for (int out = 0; out < 3; ++out) {
        const int d0 = (in == 0) - (out == 0), d1 = (in == 1) - (out == 1);
        t[in * 3 + out] = d0 * kSide + d1;
      }
    }
    return t;
  }();
  const char* w = word_.data();
  std::array<std::uint8_t, kSide * kSide> cells{};
  int cell = kRadius * kSide + kRadius;  // f(0,n) = 0
  const std::size_t mid = window / 2;
  std::size_t found_half = 0, found = 0;
  // Cells move by at most one row and column per step, so a walk that
  // would leave the grid first lands on a border cell.
  auto mark = [&](std::size_t i) {
    const int row = cell / kSide, col = cell % kSide;
    if (row == 0 || row == kSide - 1 || col == 0 || col == kSide - 1) {
      throw OracleError("relative vector outside the tracked radius at n=" + std::to_string(n) +
                        ", i=" + std::to_string(i));
    }
    ++found;
    cells[cell] = 1;
  };
  mark(0);
  for (std::size_t i = 0; i < window; ++i) {
    cell += kStep[(w[i + n] - '0') * 3 + (w[i] - '0')];
    if (!cells[cell]) mark(i + 1);
    if (i + 1 == mid) found_half = found;
  }
  if (window == 0) found_half = found;
  if (found_half != found) {
    throw OracleError("relative set for n=" + std::to_string(n) +
                      " did not stabilize within window " + std::to_string(window) +
                      "; use a larger window");
  }
  std::vector<RelativeVector> out;
  for (int c = 0; c < kSide * kSide; ++c) {
    if (!cells[c]) continue;
    const int d0 = c / kSide - kRadius, d1 = c % kSide - kRadius;
    out.push_back({d0, d1, -d0 - d1});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t TribOracle::sweep_length(std::size_t max_n, std::size_t factor, std::size_t slack) {
  return max_n + factor * max_n + slack + 2;
}

std::vector<std::vector<RelativeVector>> TribOracle::sweep(std::size_t max_n, std::size_t factor,
                                                           std::size_t slack) const {
  std::vector<std::vector<RelativeVector>> out;
  out.reserve(max_n + 1);
  for (std::size_t n = 0; n <= max_n; ++n) out.push_back(relative_set(n, factor * n + slack));
  return out;
}

void write_complexity_csv(std::ostream& out,
                          const std::vector<std::vector<RelativeVector>>& sets) {
  out << "n,complexity,subset\n";
  for (std::size_t n = 0; n < sets.size(); ++n) {
    out << n << ',' << sets[n].size() << ',';
    for (std::size_t j = 0; j < sets[n].size(); ++j) {
      if (j) out << ';';
      out << sets[n][j].to_string();
    }
    out << '\n';
  }
}

}  // namespace tribab

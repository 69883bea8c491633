#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "tribab/dfao.hpp"

namespace tribab {

/// Last digit of (n)_T; 0 for n = 0, -1 on inputs containing 111.
Dfao build_trl();

/// The Tribonacci word: 0 if (n)_T ends in 0, 1 if it ends in 01, 2 if it
/// ends in 11; -1 on inputs containing 111.
Dfao build_tr();

/// Feed (n)_T msd-first; n = 0 yields the initial state's output.
int eval(const Dfao& d, std::uint64_t n);

/// Named 1-track DFAOs (TR, TRL, and pipeline outputs TRAS, TRAC).
class WordDfaoRegistry {
 public:
  WordDfaoRegistry() = default;
  static WordDfaoRegistry with_builtins();

  void add(std::string name, Dfao d);
  const Dfao* find(const std::string& name) const;
  const std::map<std::string, Dfao>& entries() const { return entries_; }

 private:
  std::map<std::string, Dfao> entries_;
};

}  // namespace tribab

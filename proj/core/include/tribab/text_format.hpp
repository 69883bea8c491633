#pragma once

// Text serializations: Walnut-style automaton files, DOT and JSON.
//
// Walnut files start with one `msd_trib` token per track, then one block per
// state: a `<id> <output>` header and `<d1> ... <dk> -> <target>` lines.
// State 0 is initial. Plain automata leave out the dead sink; transitions
// missing on parse go to a fresh dead state. DFAO files are complete.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tribab/automaton.hpp"
#include "tribab/dfao.hpp"

namespace tribab {

class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& msg, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

std::string to_walnut(const Automaton& a);
std::string to_walnut(const Dfao& d);
Automaton automaton_from_walnut(const std::string& text);
Dfao dfao_from_walnut(const std::string& text);

std::string to_dot(const Automaton& a, const std::string& name = "A");
std::string to_dot(const Dfao& d, const std::string& name = "A");

/// `vars` is written when given (relations).
std::string to_json(const Automaton& a, const std::vector<std::string>* vars = nullptr);
std::string to_json(const Dfao& d);

}  // namespace tribab

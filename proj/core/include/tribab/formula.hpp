#pragma once

// First-order query language, a subset of Walnut's syntax:
//
//   formula := ['?msd_trib'] expr
//   expr    := quantifier | iff
//   quant   := ('E' | 'A') var {',' var} expr        (scope extends right)
//   iff     := impl {'<=>' impl}
//   impl    := or ['=>' impl]
//   or      := and {('|' | '^') and}
//   and     := unary {'&' unary}
//   unary   := '~' unary | quant | '(' expr ')' | '$' name '(' terms ')'
//            | Word '[' term ']' ('=' | '!=') '@' int | term relop term
//            | 'true' | 'false'
//   term    := operand {('+' | '-') operand}    operand := var | natural
//   relop   := '=' | '!=' | '<' | '<=' | '>' | '>='
//
// Variables start with a lowercase letter; word names start uppercase.

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tribab/relation.hpp"
#include "tribab/word_dfao.hpp"

namespace tribab {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

class CompileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Term {
  struct Operand {
    bool is_const = false;
    std::string var;
    std::uint64_t value = 0;
    bool negate = false;  ///< subtracted operand
  };
  std::vector<Operand> operands;

  bool is_var() const { return operands.size() == 1 && !operands[0].is_const && !operands[0].negate; }
  bool is_const() const { return operands.size() == 1 && operands[0].is_const && !operands[0].negate; }
  std::string to_string() const;
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class Connective { And, Or, Xor, Implies, Iff };
enum class RelOp { Eq, Ne, Lt, Le, Gt, Ge };

struct Formula {
  struct Truth { bool value; };
  struct Not { FormulaPtr body; };
  struct Binary { Connective op; FormulaPtr lhs, rhs; };
  struct Quantified { bool universal; std::vector<std::string> vars; FormulaPtr body; };
  struct Compare { RelOp op; Term lhs, rhs; };
  struct WordIndex { std::string word; Term index; int value; bool negated; };
  struct Call { std::string name; std::vector<Term> args; };

  std::variant<Truth, Not, Binary, Quantified, Compare, WordIndex, Call> node;
  std::size_t pos = 0;
};

FormulaPtr parse(std::string_view text);

/// Named relations ($name) and word DFAOs (Word[x]).
struct Env {
  std::map<std::string, Relation> relations;
  WordDfaoRegistry words = WordDfaoRegistry::with_builtins();
};

/// Tracks of the result are the sorted free variables of `f`.
Relation compile(const Formula& f, const Env& env);
Relation compile(std::string_view text, const Env& env);

struct Statement {
  enum class Kind { Def, Eval, Bare } kind;
  std::string name;
  std::string formula;
};

/// Split a sequence of `def name "..." :` / `eval name "..." :` statements.
/// A text without def/eval keywords is one bare formula.
std::vector<Statement> parse_script(std::string_view text);

}  // namespace tribab

#include "tribab/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace tribab {

std::string Term::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < operands.size(); ++i) {
    const auto& o = operands[i];
    if (i) out += o.negate ? "-" : "+";
    out += o.is_const ? std::to_string(o.value) : o.var;
  }
  return out;
}

namespace {

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_ident(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  FormulaPtr parse_formula() {
    skip();
    if (peek() == '?') {
      const std::size_t start = i_;
      ++i_;
      std::string tag = identifier();
      if (tag != "msd_trib") throw ParseError("unsupported numeration '?" + tag + "'", start);
    }
    FormulaPtr f = parse_expr();
    skip();
    if (i_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[i_]) + "'", i_);
    return f;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool lookahead(std::string_view tok) {
    skip();
    return s_.substr(i_, tok.size()) == tok;
  }
  bool match(std::string_view tok) {
    if (!lookahead(tok)) return false;
    i_ += tok.size();
    return true;
  }
  void expect(std::string_view tok) {
    if (!match(tok)) throw ParseError("expected '" + std::string(tok) + "'", i_);
  }
  std::string identifier() {
    const std::size_t start = i_;
    while (i_ < s_.size() && is_ident(s_[i_])) ++i_;
    if (start == i_) throw ParseError("expected identifier", i_);
    return std::string(s_.substr(start, i_ - start));
  }
  std::string variable() {
    skip();
    if (i_ >= s_.size() || !is_lower(s_[i_])) throw ParseError("expected variable", i_);
    return identifier();
  }

  static FormulaPtr make(Formula::Truth n, std::size_t p) { return std::make_shared<Formula>(Formula{n, p}); }
  template <class N>
  static FormulaPtr make(N n, std::size_t p) {
    return std::make_shared<Formula>(Formula{std::move(n), p});
  }

  bool at_quantifier() {
    skip();
    if (i_ + 1 >= s_.size() || (s_[i_] != 'E' && s_[i_] != 'A')) return false;
    std::size_t j = i_ + 1;
    while (j < s_.size() && std::isspace(static_cast<unsigned char>(s_[j]))) ++j;
    return j < s_.size() && is_lower(s_[j]);
  }

  FormulaPtr parse_expr() {
    if (at_quantifier()) return parse_quantifier();
    return parse_iff();
  }

  FormulaPtr parse_quantifier() {
    const std::size_t p = i_;
    const bool universal = s_[i_] == 'A';
    ++i_;
    std::vector<std::string> vars{variable()};
    while (match(",")) vars.push_back(variable());
    FormulaPtr body = parse_expr();
    return make(Formula::Quantified{universal, std::move(vars), std::move(body)}, p);
  }

  FormulaPtr parse_iff() {
    FormulaPtr lhs = parse_impl();
    while (true) {
      const std::size_t p = i_;
      if (!match("<=>")) return lhs;
      FormulaPtr rhs = parse_impl();
      lhs = make(Formula::Binary{Connective::Iff, lhs, rhs}, p);
    }
  }

  FormulaPtr parse_impl() {
    FormulaPtr lhs = parse_or();
    const std::size_t p = i_;
    if (!match("=>")) return lhs;
    FormulaPtr rhs = parse_impl();
    return make(Formula::Binary{Connective::Implies, lhs, rhs}, p);
  }

  FormulaPtr parse_or() {
    FormulaPtr lhs = parse_and();
    while (true) {
      const std::size_t p = i_;
      Connective op;
      if (match("|")) op = Connective::Or;
      else if (match("^")) op = Connective::Xor;
      else return lhs;
      FormulaPtr rhs = parse_and();
      lhs = make(Formula::Binary{op, lhs, rhs}, p);
    }
  }

  FormulaPtr parse_and() {
    FormulaPtr lhs = parse_unary();
    while (true) {
      const std::size_t p = i_;
      if (!match("&")) return lhs;
      FormulaPtr rhs = parse_unary();
      lhs = make(Formula::Binary{Connective::And, lhs, rhs}, p);
    }
  }

  FormulaPtr parse_unary() {
    skip();
    const std::size_t p = i_;
    if (i_ >= s_.size()) throw ParseError("unexpected end of formula", i_);
    if (match("~")) return make(Formula::Not{parse_unary()}, p);
    if (at_quantifier()) return parse_quantifier();
    if (match("(")) {
      FormulaPtr f = parse_expr();
      expect(")");
      return f;
    }
    if (match("$")) {
      std::string name = identifier();
      expect("(");
      std::vector<Term> args;
      if (!match(")")) {
        args.push_back(parse_term());
        while (match(",")) args.push_back(parse_term());
        expect(")");
      }
      return make(Formula::Call{std::move(name), std::move(args)}, p);
    }
    if (is_upper(s_[i_])) {
      std::string word = identifier();
      expect("[");
      Term index = parse_term();
      expect("]");
      bool negated = false;
      if (match("!=")) negated = true;
      else expect("=");
      expect("@");
      int value = static_cast<int>(parse_integer());
      return make(Formula::WordIndex{std::move(word), std::move(index), value, negated}, p);
    }
    if (is_lower(s_[i_])) {
      const std::size_t save = i_;
      std::string id = identifier();
      if (id == "true" || id == "false") {
        return make(Formula::Truth{id == "true"}, p);
      }
      i_ = save;
    }
    Term lhs = parse_term();
    RelOp op;
    if (match("!=")) op = RelOp::Ne;
    else if (match("<=>")) throw ParseError("'<=>' needs formulas on both sides", i_ - 3);
    else if (match("<=")) op = RelOp::Le;
    else if (match(">=")) op = RelOp::Ge;
    else if (match("<")) op = RelOp::Lt;
    else if (match(">")) op = RelOp::Gt;
    else if (lookahead("=>")) throw ParseError("expected comparison", i_);
    else if (match("=")) op = RelOp::Eq;
    else throw ParseError("expected comparison operator", i_);
    Term rhs = parse_term();
    return make(Formula::Compare{op, std::move(lhs), std::move(rhs)}, p);
  }

  std::int64_t parse_integer() {
    skip();
    bool neg = match("-");
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) throw ParseError("expected integer", i_);
    std::int64_t v = std::stoll(std::string(s_.substr(start, i_ - start)));
    return neg ? -v : v;
  }

  Term::Operand parse_operand(bool negate) {
    skip();
    Term::Operand o;
    o.negate = negate;
    if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      const std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      o.is_const = true;
      o.value = std::stoull(std::string(s_.substr(start, i_ - start)));
    } else {
      o.var = variable();
    }
    return o;
  }

  Term parse_term() {
    Term t;
    t.operands.push_back(parse_operand(false));
    while (true) {
      if (match("+")) t.operands.push_back(parse_operand(false));
      else if (match("-")) t.operands.push_back(parse_operand(true));
      else return t;
    }
  }
};

struct Literal {
  const Formula* f;
  bool negated;
};

class Compiler {
 public:
  explicit Compiler(const Env& env) : env_(env) {}

  Relation compile(const Formula& f) {
    return std::visit([&](const auto& n) { return compile_node(n, f); }, f.node);
  }

 private:
  const Env& env_;
  int fresh_ = 0;

  std::string fresh() { return "#" + std::to_string(fresh_++); }

  // Conjoin, then drop `hidden` variables that are no longer needed.
  static Relation conjoin_hiding(std::vector<Relation> parts, const std::vector<std::string>& hidden) {
    Relation acc = parts.empty() ? Relation::truth(true) : parts[0];
    auto later_uses = [&](std::size_t i, const std::string& v) {
      for (std::size_t j = i + 1; j < parts.size(); ++j) {
        const auto& vs = parts[j].vars();
        if (std::find(vs.begin(), vs.end(), v) != vs.end()) return true;
      }
      return false;
    };
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i > 0) acc = rel_and(acc, parts[i]);
      std::vector<std::string> drop;
      for (const auto& v : hidden) {
        const auto& vs = acc.vars();
        if (std::find(vs.begin(), vs.end(), v) != vs.end() && !later_uses(i, v)) drop.push_back(v);
      }
      if (!drop.empty()) acc = rel_exists(acc, drop);
    }
    return acc;
  }

  // Name standing for one operand; constants get a fresh variable.
  std::string operand_var(const Term::Operand& o, std::vector<Relation>& parts,
                          std::vector<std::string>& hidden) {
    if (!o.is_const) return o.var;
    std::string f = fresh();
    parts.push_back(atom_const(f, o.value));
    hidden.push_back(f);
    return f;
  }

  // Relation asserting target = sum of the given positive operands.
  void sum_into(const std::vector<Term::Operand>& ops, const std::string& target,
                std::vector<Relation>& parts, std::vector<std::string>& hidden) {
    if (ops.empty()) {
      parts.push_back(atom_const(target, 0));
      return;
    }
    if (ops.size() == 1) {
      if (ops[0].is_const) parts.push_back(atom_const(target, ops[0].value));
      else parts.push_back(atom_eq(target, ops[0].var));
      return;
    }
    std::string acc = operand_var(ops[0], parts, hidden);
    for (std::size_t i = 1; i < ops.size(); ++i) {
      const std::string rhs = operand_var(ops[i], parts, hidden);
      std::string out = (i + 1 == ops.size()) ? target : fresh();
      if (out != target) hidden.push_back(out);
      parts.push_back(atom_add(out, acc, rhs));
      acc = out;
    }
  }

  Relation term_into(const Term& t, const std::string& target) {
    std::vector<Term::Operand> pos, neg;
    for (const auto& o : t.operands) (o.negate ? neg : pos).push_back(o);
    std::vector<Relation> parts;
    std::vector<std::string> hidden;
    if (neg.empty()) {
      sum_into(pos, target, parts, hidden);
    } else {
      // target = P - N  <=>  p = target + q
      std::string p = fresh(), q = fresh();
      hidden.push_back(p);
      hidden.push_back(q);
      for (auto& o : neg) o.negate = false;
      sum_into(pos, p, parts, hidden);
      sum_into(neg, q, parts, hidden);
      parts.push_back(atom_add(p, target, q));
    }
    return conjoin_hiding(std::move(parts), hidden);
  }

  Relation compile_node(const Formula::Truth& n, const Formula&) { return Relation::truth(n.value); }

  Relation compile_node(const Formula::Not& n, const Formula&) { return rel_not(compile(*n.body)); }

  Relation compile_node(const Formula::Binary& n, const Formula& f) {
    if (n.op == Connective::And) {
      std::vector<Literal> lits;
      flatten(f, false, lits);
      return compile_exists({}, lits);
    }
    Relation a = compile(*n.lhs);
    Relation b = compile(*n.rhs);
    switch (n.op) {
      case Connective::Or: return rel_or(a, b);
      case Connective::Xor: return rel_xor(a, b);
      case Connective::Implies: return rel_implies(a, b);
      case Connective::Iff: return rel_iff(a, b);
      case Connective::And: break;
    }
    return rel_and(a, b);
  }

  Relation compile_node(const Formula::Quantified& n, const Formula&) {
    std::vector<Literal> lits;
    flatten(*n.body, n.universal, lits);
    Relation inner = compile_exists(n.vars, lits);
    return n.universal ? rel_not(inner) : inner;
  }

  Relation compile_node(const Formula::Compare& n, const Formula&) {
    if (n.op == RelOp::Eq) {
      if (n.rhs.is_var()) return term_into(n.lhs, n.rhs.operands[0].var);
      if (n.lhs.is_var()) return term_into(n.rhs, n.lhs.operands[0].var);
      std::string f = fresh();
      return conjoin_hiding({term_into(n.lhs, f), term_into(n.rhs, f)}, {f});
    }
    std::vector<Relation> parts;
    std::vector<std::string> hidden;
    auto side = [&](const Term& t) {
      if (t.is_var()) return t.operands[0].var;
      std::string f = fresh();
      parts.push_back(term_into(t, f));
      hidden.push_back(f);
      return f;
    };
    const std::string l = side(n.lhs);
    const std::string r = side(n.rhs);
    switch (n.op) {
      case RelOp::Lt: parts.push_back(atom_lt(l, r)); break;
      case RelOp::Gt: parts.push_back(atom_lt(r, l)); break;
      case RelOp::Le: parts.push_back(atom_leq(l, r)); break;
      case RelOp::Ge: parts.push_back(atom_leq(r, l)); break;
      case RelOp::Ne: parts.push_back(rel_not(atom_eq(l, r))); break;
      case RelOp::Eq: break;
    }
    return conjoin_hiding(std::move(parts), hidden);
  }

  Relation compile_node(const Formula::WordIndex& n, const Formula& f) {
    const Dfao* word = env_.words.find(n.word);
    if (!word) throw CompileError("unknown word '" + n.word + "' at position " + std::to_string(f.pos));
    std::vector<Relation> parts;
    std::vector<std::string> hidden;
    std::string v;
    if (n.index.is_var()) {
      v = n.index.operands[0].var;
    } else {
      v = fresh();
      parts.push_back(term_into(n.index, v));
      hidden.push_back(v);
    }
    Relation r = dfao_eq(*word, v, n.value);
    parts.push_back(n.negated ? rel_not(r) : r);
    return conjoin_hiding(std::move(parts), hidden);
  }

  Relation compile_node(const Formula::Call& n, const Formula& f) {
    auto it = env_.relations.find(n.name);
    if (it == env_.relations.end()) {
      throw CompileError("unbound relation '$" + n.name + "' at position " + std::to_string(f.pos));
    }
    const Relation& base = it->second;
    if (static_cast<int>(n.args.size()) != base.arity()) {
      throw CompileError("$" + n.name + " expects " + std::to_string(base.arity()) +
                         " arguments, got " + std::to_string(n.args.size()) + " at position " +
                         std::to_string(f.pos));
    }
    std::map<std::string, std::string> mapping;
    std::set<std::string> used;
    std::vector<Relation> parts;
    std::vector<std::string> hidden;
    for (std::size_t j = 0; j < n.args.size(); ++j) {
      const Term& arg = n.args[j];
      if (arg.is_var() && used.insert(arg.operands[0].var).second) {
        mapping[base.vars()[j]] = arg.operands[0].var;
      } else {
        std::string v = fresh();
        mapping[base.vars()[j]] = v;
        hidden.push_back(v);
        parts.push_back(term_into(arg, v));
      }
    }
    parts.insert(parts.begin(), rename(base, mapping));
    return conjoin_hiding(std::move(parts), hidden);
  }

  static void flatten(const Formula& f, bool negated, std::vector<Literal>& out) {
    if (const auto* b = std::get_if<Formula::Binary>(&f.node)) {
      if (b->op == Connective::And && !negated) {
        flatten(*b->lhs, false, out);
        flatten(*b->rhs, false, out);
        return;
      }
      if (b->op == Connective::Or && negated) {
        flatten(*b->lhs, true, out);
        flatten(*b->rhs, true, out);
        return;
      }
      if (b->op == Connective::Implies && negated) {
        flatten(*b->lhs, false, out);
        flatten(*b->rhs, true, out);
        return;
      }
    }
    if (const auto* n = std::get_if<Formula::Not>(&f.node)) {
      flatten(*n->body, !negated, out);
      return;
    }
    out.push_back({&f, negated});
  }

  Relation compile_literal(const Literal& lit) {
    if (lit.negated) {
      if (const auto* q = std::get_if<Formula::Quantified>(&lit.f->node); q && q->universal) {
        std::vector<Literal> inner;
        flatten(*q->body, true, inner);
        return compile_exists(q->vars, inner);
      }
      return rel_not(compile(*lit.f));
    }
    return compile(*lit.f);
  }

  Relation compile_exists(const std::vector<std::string>& vars, const std::vector<Literal>& lits) {
    std::vector<Relation> parts;
    for (const auto& lit : lits) parts.push_back(compile_literal(lit));
    for (const auto& v : vars) {
      const bool free = std::any_of(parts.begin(), parts.end(), [&](const Relation& r) {
        return std::find(r.vars().begin(), r.vars().end(), v) != r.vars().end();
      });
      if (!free) throw CompileError("quantified variable '" + v + "' does not occur in its scope");
    }
    return conjoin_hiding(std::move(parts), vars);
  }
};

}  // namespace

FormulaPtr parse(std::string_view text) { return Parser(text).parse_formula(); }

Relation compile(const Formula& f, const Env& env) { return Compiler(env).compile(f); }

Relation compile(std::string_view text, const Env& env) { return compile(*parse(text), env); }

std::vector<Statement> parse_script(std::string_view text) {
  std::vector<Statement> out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ':' || text[i] == ';')) ++i;
  };
  skip();
  const bool scripted = text.substr(i, 4) == "def " || text.substr(i, 5) == "eval ";
  if (!scripted) {
    out.push_back({Statement::Kind::Bare, "", std::string(text)});
    return out;
  }
  while (true) {
    skip();
    if (i >= text.size()) break;
    Statement st;
    if (text.substr(i, 4) == "def ") {
      st.kind = Statement::Kind::Def;
      i += 4;
    } else if (text.substr(i, 5) == "eval ") {
      st.kind = Statement::Kind::Eval;
      i += 5;
    } else {
      throw ParseError("expected 'def' or 'eval'", i);
    }
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && is_ident(text[i])) ++i;
    if (start == i) throw ParseError("expected statement name", i);
    st.name = std::string(text.substr(start, i - start));
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size() || text[i] != '"') throw ParseError("expected '\"'", i);
    const std::size_t close = text.find('"', i + 1);
    if (close == std::string_view::npos) throw ParseError("unterminated formula string", i);
    st.formula = std::string(text.substr(i + 1, close - i - 1));
    i = close + 1;
    out.push_back(std::move(st));
  }
  return out;
}

}  // namespace tribab

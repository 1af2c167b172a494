#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "polres/prop.hpp"
#include "polres/rewrite.hpp"
#include "polres/term.hpp"

namespace polres {

class ParseError : public std::runtime_error {
 public:
  ParseError(size_t line, size_t col, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + message),
        line_(line),
        col_(col) {}
  size_t line() const { return line_; }
  size_t col() const { return col_; }

 private:
  size_t line_, col_;
};

namespace detail {

/// Character cursor with line/column tracking and '#' comments.
class Cursor {
 public:
  explicit Cursor(std::string text) : text_(std::move(text)) {}

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool eof() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  char peek_raw() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  bool try_consume(char c) {
    if (peek() != c) return false;
    advance();
    return true;
  }

  bool try_consume(const std::string& s) {
    skip_ws();
    if (text_.compare(pos_, s.size(), s) != 0) return false;
    for (size_t i = 0; i < s.size(); ++i) advance();
    return true;
  }

  void expect(char c, const std::string& what) {
    if (!try_consume(c)) error("expected '" + std::string(1, c) + "' " + what);
  }

  std::string ident() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
        advance();
      else
        break;
    }
    if (start == pos_) error("expected identifier");
    return text_.substr(start, pos_ - start);
  }

  [[noreturn]] void error(const std::string& message) {
    throw ParseError(line_, col_, message);
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string text_;
  size_t pos_ = 0;
  size_t line_ = 1, col_ = 1;
};

}  // namespace detail

/// A parsed problem: clauses with roles, optional explicit rewrite
/// rules, and the signature implied by use.
struct Problem {
  std::string name;
  std::vector<Clause> clauses;  // ids 1..n in input order
  std::vector<PolarizedRule> explicit_rules;
  std::map<std::string, int> predicate_arity;
  std::map<std::string, int> function_arity;
  std::map<std::string, VarId> varmap;  // source name -> id

  std::set<int> theory_ids() const {
    std::set<int> out;
    for (const auto& c : clauses)
      if (c.one_way()) out.insert(c.id);
    return out;
  }

  /// The polarized rewrite system: the translation of each theory
  /// clause in input order, then any explicit rules; ids 1..n.
  std::vector<PolarizedRule> rules() const {
    std::vector<PolarizedRule> out;
    int id = 1;
    for (const auto& c : clauses)
      if (c.one_way()) out.push_back(clause_to_rule(c, id++));
    for (auto r : explicit_rules) {
      r.id = id++;
      out.push_back(r);
    }
    return out;
  }
};

namespace detail {

/// Shared parsing state: the signature and variable names seen so far.
/// Problem, goal, and proof files parsed with the same context agree on
/// variable identities.
struct ParseContext {
  Problem* problem;

  VarId var(const std::string& name) {
    auto it = problem->varmap.find(name);
    if (it != problem->varmap.end()) return it->second;
    VarId v = fresh_var(name);
    problem->varmap.emplace(name, v);
    return v;
  }

  Symbol symbol(Cursor& cur, const std::string& name, int arity, SymbolKind kind) {
    auto& table = kind == SymbolKind::Predicate ? problem->predicate_arity
                                                : problem->function_arity;
    auto [it, inserted] = table.emplace(name, arity);
    if (!inserted && it->second != arity)
      cur.error("arity clash for '" + name + "': " + std::to_string(it->second) + " vs " +
                std::to_string(arity));
    return Symbol{name, arity, kind};
  }
};

inline bool is_variable_name(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

inline Term parse_term(Cursor& cur, ParseContext& ctx) {
  std::string name = cur.ident();
  if (is_variable_name(name)) return Term::variable(ctx.var(name));
  std::vector<Term> args;
  if (cur.try_consume('(')) {
    args.push_back(parse_term(cur, ctx));
    while (cur.try_consume(',')) args.push_back(parse_term(cur, ctx));
    cur.expect(')', "after term arguments");
  }
  return Term::app(ctx.symbol(cur, name, static_cast<int>(args.size()), SymbolKind::Function),
                   std::move(args));
}

// Heads are predicate symbols regardless of case; the uppercase rule
// for variables applies in argument positions only.
inline Atom parse_atom(Cursor& cur, ParseContext& ctx) {
  std::string name = cur.ident();
  std::vector<Term> args;
  if (cur.try_consume('(')) {
    args.push_back(parse_term(cur, ctx));
    while (cur.try_consume(',')) args.push_back(parse_term(cur, ctx));
    cur.expect(')', "after atom arguments");
  }
  return Atom{ctx.symbol(cur, name, static_cast<int>(args.size()), SymbolKind::Predicate),
              std::move(args)};
}

inline Prop parse_prop(Cursor& cur, ParseContext& ctx) {
  if (cur.try_consume('~')) return Prop::neg(parse_prop(cur, ctx));
  if (cur.try_consume('(')) {
    Prop left = parse_prop(cur, ctx);
    if (!cur.try_consume("\\/")) cur.error("expected '\\/' in disjunction");
    Prop right = parse_prop(cur, ctx);
    cur.expect(')', "after disjunction");
    return Prop::disj(left, right);
  }
  // 'false', 'forall X. p', or an atom
  std::string name = cur.ident();
  if (name == "false") return Prop::falsum();
  if (name == "forall") {
    std::string vn = cur.ident();
    if (!is_variable_name(vn)) cur.error("forall binder must be a variable name");
    cur.expect('.', "after forall binder");
    return Prop::forall(ctx.var(vn), parse_prop(cur, ctx));
  }
  std::vector<Term> args;
  if (cur.try_consume('(')) {
    args.push_back(parse_term(cur, ctx));
    while (cur.try_consume(',')) args.push_back(parse_term(cur, ctx));
    cur.expect(')', "after atom arguments");
  }
  return Prop::atomic(
      Atom{ctx.symbol(cur, name, static_cast<int>(args.size()), SymbolKind::Predicate),
           std::move(args)});
}

}  // namespace detail

/// Parse the problem format:
///   line   := "theory" clause "." | "clause" clause "." | "rule" sign atom "->" prop "."
///   clause := lit ("|" lit)*   lit := ["-"] atom ["*"]   (* marks the selected literal)
/// Variables start uppercase; '#' starts a comment.
inline Problem parse_problem(const std::string& text, const std::string& name = "") {
  Problem p;
  p.name = name;
  detail::ParseContext ctx{&p};
  detail::Cursor cur(text);

  while (!cur.eof()) {
    std::string kw = cur.ident();
    if (kw == "theory" || kw == "clause") {
      bool theory = kw == "theory";
      Clause c;
      std::optional<size_t> selected;
      do {
        Literal lit;
        lit.positive = !cur.try_consume('-');
        lit.atom = detail::parse_atom(cur, ctx);
        c.literals.push_back(lit);
        if (cur.try_consume('*')) {
          if (!theory) cur.error("selected-literal mark '*' on a non-theory line");
          if (selected) cur.error("multiple selected literals in one clause");
          selected = c.literals.size() - 1;
        }
      } while (cur.try_consume('|'));
      cur.expect('.', "at end of clause");
      if (theory) {
        if (!selected) cur.error("theory clause lacks selected literal");
        c.role = ClauseRole::OneWay;
        c.selected = *selected;
      }
      c.id = static_cast<int>(p.clauses.size()) + 1;
      p.clauses.push_back(std::move(c));
    } else if (kw == "rule") {
      PolarizedRule r;
      if (cur.try_consume('+'))
        r.sign = Sign::Pos;
      else if (cur.try_consume('-'))
        r.sign = Sign::Neg;
      else
        cur.error("expected '+' or '-' after 'rule'");
      r.lhs = detail::parse_atom(cur, ctx);
      if (!cur.try_consume("->")) cur.error("expected '->' in rule");
      r.rhs = detail::parse_prop(cur, ctx);
      cur.expect('.', "at end of rule");
      auto lhs_vars = vars_of(r.lhs);
      for (VarId v : free_vars(r.rhs))
        if (!lhs_vars.count(v)) cur.error("rule right-hand side has a variable not in the head");
      p.explicit_rules.push_back(std::move(r));
    } else {
      cur.error("expected 'theory', 'clause' or 'rule', got '" + kw + "'");
    }
  }
  return p;
}

inline std::string to_string(const Problem& p) {
  std::string out;
  for (const auto& c : p.clauses) {
    out += (c.one_way() ? "theory " : "clause ");
    out += to_string(c) + ".\n";
  }
  for (const auto& r : p.explicit_rules) out += to_string(r) + ".\n";
  return out;
}

/// The worked examples shipped with the workbench.
inline const std::map<std::string, std::string>& corpus() {
  static const std::map<std::string, std::string> problems = {
      {"intro",
       "clause P.\n"
       "clause -P | Q.\n"
       "clause -Q.\n"},
      {"example1",
       "theory P* | Q.\n"
       "theory -P* | Q.\n"
       "clause -Q.\n"},
      {"example_aaa",
       "theory P* | Q.\n"
       "theory P* | -Q.\n"},
      {"example_aaa_ext",
       "theory P* | Q.\n"
       "theory P* | -Q.\n"
       "clause -P.\n"},
      {"example_bbb",
       "theory -eps(vee(X,Y))* | eps(X) | eps(Y).\n"
       "theory eps(vee(X,Y))* | -eps(X).\n"
       "theory eps(vee(X,Y))* | -eps(Y).\n"
       "theory -eps(neg(X))* | -eps(X).\n"
       "theory eps(neg(X))* | eps(X).\n"
       "theory -eps(fa(X))* | eps(app(X,Y)).\n"
       "theory eps(fa(X))* | -eps(app(X,h(X))).\n"
       "theory -eps(null(s(X)))*.\n"
       "theory eps(null(zero))*.\n"},
      {"loop",
       "theory P(f(X))* | -P(X).\n"
       "clause P(a).\n"},
  };
  return problems;
}

inline std::optional<Problem> load_corpus_problem(const std::string& name) {
  auto it = corpus().find(name);
  if (it == corpus().end()) return std::nullopt;
  return parse_problem(it->second, name);
}

}  // namespace polres

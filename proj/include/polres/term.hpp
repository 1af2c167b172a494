#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace polres {

enum class SymbolKind { Function, Predicate };

/// A function or predicate symbol with a fixed arity.
struct Symbol {
  std::string name;
  int arity = 0;
  SymbolKind kind = SymbolKind::Function;

  friend bool operator==(const Symbol& a, const Symbol& b) {
    return a.name == b.name && a.arity == b.arity && a.kind == b.kind;
  }
  friend bool operator!=(const Symbol& a, const Symbol& b) { return !(a == b); }
  friend bool operator<(const Symbol& a, const Symbol& b) {
    if (a.name != b.name) return a.name < b.name;
    if (a.arity != b.arity) return a.arity < b.arity;
    return a.kind < b.kind;
  }
};

using VarId = int;

/// Append-only registry mapping variable ids to display names.
/// Single-threaded by contract; ids are indices into the table.
class VarTable {
 public:
  static VarTable& instance() {
    static VarTable t;
    return t;
  }

  VarId fresh(std::string name) {
    names_.push_back(std::move(name));
    return static_cast<VarId>(names_.size() - 1);
  }

  const std::string& name(VarId v) const { return names_.at(static_cast<size_t>(v)); }

 private:
  std::vector<std::string> names_;
};

inline VarId fresh_var(std::string name) { return VarTable::instance().fresh(std::move(name)); }
inline const std::string& var_name(VarId v) { return VarTable::instance().name(v); }

/// First-order term: a variable or a function application.
struct Term {
  // var >= 0 means variable; otherwise fn/args hold an application.
  VarId var = -1;
  Symbol fn;
  std::vector<Term> args;

  static Term variable(VarId v) {
    Term t;
    t.var = v;
    return t;
  }
  static Term app(Symbol f, std::vector<Term> as = {}) {
    Term t;
    t.var = -1;
    t.fn = std::move(f);
    t.args = std::move(as);
    return t;
  }

  bool is_var() const { return var >= 0; }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.is_var() != b.is_var()) return false;
    if (a.is_var()) return a.var == b.var;
    return a.fn == b.fn && a.args == b.args;
  }
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
  friend bool operator<(const Term& a, const Term& b) {
    if (a.is_var() != b.is_var()) return a.is_var();
    if (a.is_var()) return a.var < b.var;
    if (a.fn != b.fn) return a.fn < b.fn;
    return a.args < b.args;
  }
};

struct Atom {
  Symbol pred;
  std::vector<Term> args;

  friend bool operator==(const Atom& a, const Atom& b) {
    return a.pred == b.pred && a.args == b.args;
  }
  friend bool operator!=(const Atom& a, const Atom& b) { return !(a == b); }
  friend bool operator<(const Atom& a, const Atom& b) {
    if (a.pred != b.pred) return a.pred < b.pred;
    return a.args < b.args;
  }
};

struct Literal {
  bool positive = true;
  Atom atom;

  Literal complement() const { return Literal{!positive, atom}; }

  friend bool operator==(const Literal& a, const Literal& b) {
    return a.positive == b.positive && a.atom == b.atom;
  }
  friend bool operator!=(const Literal& a, const Literal& b) { return !(a == b); }
  friend bool operator<(const Literal& a, const Literal& b) {
    if (a.positive != b.positive) return a.positive < b.positive;
    return a.atom < b.atom;
  }
};

enum class ClauseRole { Ordinary, OneWay };

struct Substitution;  // subst.hpp

/// How a clause came to exist. Input clauses have no parents; derived
/// clauses record enough to replay the inference.
struct Provenance {
  enum class Kind { Input, Resolvent, Factor } kind = Kind::Input;
  std::vector<int> parents;
  std::vector<size_t> positions;  // positions[k] indexes into premises[k]
  std::map<VarId, Term> subst;    // the mgu used, flattened
  // The premise literal vectors exactly as used (after renaming apart),
  // so applying `subst` to them reproduces the clause literally.
  std::vector<std::vector<Literal>> premises;
};

/// A clause is a multiset of literals. Duplicates are preserved;
/// only explicit factoring removes them.
struct Clause {
  std::vector<Literal> literals;
  ClauseRole role = ClauseRole::Ordinary;
  size_t selected = 0;  // valid only when role == OneWay
  int id = -1;
  int generation = 0;  // 0 for input, i for the i-th generated clause
  Provenance provenance;

  bool empty() const { return literals.empty(); }
  bool one_way() const { return role == ClauseRole::OneWay; }
};

// ---- variable collection ----

inline void collect_vars(const Term& t, std::set<VarId>& out) {
  if (t.is_var()) {
    out.insert(t.var);
    return;
  }
  for (const auto& a : t.args) collect_vars(a, out);
}

inline void collect_vars(const Atom& a, std::set<VarId>& out) {
  for (const auto& t : a.args) collect_vars(t, out);
}

inline void collect_vars(const Clause& c, std::set<VarId>& out) {
  for (const auto& l : c.literals) collect_vars(l.atom, out);
}

template <typename T>
std::set<VarId> vars_of(const T& x) {
  std::set<VarId> s;
  collect_vars(x, s);
  return s;
}

inline bool occurs_in(VarId v, const Term& t) {
  if (t.is_var()) return t.var == v;
  for (const auto& a : t.args)
    if (occurs_in(v, a)) return true;
  return false;
}

// ---- printing ----

inline std::string to_string(const Term& t) {
  if (t.is_var()) return var_name(t.var);
  if (t.args.empty()) return t.fn.name;
  std::string s = t.fn.name + "(";
  for (size_t i = 0; i < t.args.size(); ++i) {
    if (i) s += ",";
    s += to_string(t.args[i]);
  }
  return s + ")";
}

inline std::string to_string(const Atom& a) {
  Term t = Term::app(Symbol{a.pred.name, a.pred.arity, SymbolKind::Function}, a.args);
  return to_string(t);
}

inline std::string to_string(const Literal& l) {
  return (l.positive ? "" : "-") + to_string(l.atom);
}

inline std::string to_string(const Clause& c) {
  if (c.literals.empty()) return "[]";
  std::string s;
  for (size_t i = 0; i < c.literals.size(); ++i) {
    if (i) s += " | ";
    s += to_string(c.literals[i]);
    if (c.one_way() && c.selected == i) s += "*";
  }
  return s;
}

}  // namespace polres

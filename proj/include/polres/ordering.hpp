#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "polres/term.hpp"

namespace polres {

enum class AtomOrder { LT, GT, EQ, Incomparable };

/// Ranked symbol lists: later in the list means greater. Predicates and
/// functions are ordered separately.
struct Precedence {
  std::map<std::string, int> predicate_rank;
  std::map<std::string, int> function_rank;

  static Precedence from_lists(const std::vector<std::string>& preds,
                               const std::vector<std::string>& fns) {
    Precedence p;
    for (size_t i = 0; i < preds.size(); ++i) p.predicate_rank[preds[i]] = static_cast<int>(i);
    for (size_t i = 0; i < fns.size(); ++i) p.function_rank[fns[i]] = static_cast<int>(i);
    return p;
  }

  int rank(const Symbol& s) const {
    const auto& m = s.kind == SymbolKind::Predicate ? predicate_rank : function_rank;
    auto it = m.find(s.name);
    if (it == m.end()) throw std::invalid_argument("symbol not in precedence: " + s.name);
    return it->second;
  }
};

namespace detail {

inline int term_weight(const Term& t) {
  if (t.is_var()) return 1;
  int w = 1;
  for (const auto& a : t.args) w += term_weight(a);
  return w;
}

inline void var_counts(const Term& t, std::map<VarId, int>& out) {
  if (t.is_var()) {
    out[t.var]++;
    return;
  }
  for (const auto& a : t.args) var_counts(a, out);
}

/// a's variable occurrences dominate b's pointwise.
inline bool vars_dominate(const std::map<VarId, int>& a, const std::map<VarId, int>& b) {
  for (const auto& [v, n] : b) {
    auto it = a.find(v);
    if (it == a.end() || it->second < n) return false;
  }
  return true;
}

inline AtomOrder flip(AtomOrder o) {
  if (o == AtomOrder::LT) return AtomOrder::GT;
  if (o == AtomOrder::GT) return AtomOrder::LT;
  return o;
}

AtomOrder compare_terms(const Precedence& p, const Term& a, const Term& b);

/// Shared KBO spine for terms and atoms: weight, then head rank, then
/// left-to-right argument comparison. The variable-dominance condition
/// keeps every verdict stable under substitution.
inline AtomOrder kbo(const Precedence& p, int wa, int wb, const std::map<VarId, int>& va,
                     const std::map<VarId, int>& vb, int rank_a, int rank_b,
                     const std::vector<Term>& args_a, const std::vector<Term>& args_b) {
  bool a_dom = vars_dominate(va, vb);
  bool b_dom = vars_dominate(vb, va);
  if (wa > wb) return a_dom ? AtomOrder::GT : AtomOrder::Incomparable;
  if (wa < wb) return b_dom ? AtomOrder::LT : AtomOrder::Incomparable;
  if (rank_a != rank_b) {
    if (rank_a > rank_b) return a_dom ? AtomOrder::GT : AtomOrder::Incomparable;
    return b_dom ? AtomOrder::LT : AtomOrder::Incomparable;
  }
  for (size_t i = 0; i < args_a.size() && i < args_b.size(); ++i) {
    AtomOrder o = compare_terms(p, args_a[i], args_b[i]);
    if (o == AtomOrder::EQ) continue;
    if (o == AtomOrder::Incomparable) return o;
    if (o == AtomOrder::GT) return a_dom ? AtomOrder::GT : AtomOrder::Incomparable;
    return b_dom ? AtomOrder::LT : AtomOrder::Incomparable;
  }
  if (args_a.size() != args_b.size()) return AtomOrder::Incomparable;
  return AtomOrder::EQ;
}

inline AtomOrder compare_terms(const Precedence& p, const Term& a, const Term& b) {
  if (a == b) return AtomOrder::EQ;
  if (a.is_var()) return occurs_in(a.var, b) ? AtomOrder::LT : AtomOrder::Incomparable;
  if (b.is_var()) return occurs_in(b.var, a) ? AtomOrder::GT : AtomOrder::Incomparable;
  std::map<VarId, int> va, vb;
  var_counts(a, va);
  var_counts(b, vb);
  return kbo(p, term_weight(a), term_weight(b), va, vb, p.rank(a.fn), p.rank(b.fn), a.args,
             b.args);
}

}  // namespace detail

/// Weight-then-precedence-then-lexicographic atom order; unit symbol
/// weights, variables weigh 1. Total on ground atoms, stable under
/// substitution; Incomparable whenever variables block a stable verdict.
inline AtomOrder compare_atoms(const Precedence& p, const Atom& a, const Atom& b) {
  if (a == b) return AtomOrder::EQ;
  int wa = 1, wb = 1;
  std::map<VarId, int> va, vb;
  for (const auto& t : a.args) {
    wa += detail::term_weight(t);
    detail::var_counts(t, va);
  }
  for (const auto& t : b.args) {
    wb += detail::term_weight(t);
    detail::var_counts(t, vb);
  }
  return detail::kbo(p, wa, wb, va, vb, p.rank(a.pred), p.rank(b.pred), a.args, b.args);
}

/// No other literal of c compares GT or EQ to lit's atom.
inline bool is_strictly_maximal(const Literal& lit, const Clause& c, const Precedence& p) {
  for (const auto& other : c.literals) {
    if (&other == &lit) continue;
    AtomOrder o = compare_atoms(p, other.atom, lit.atom);
    if (o == AtomOrder::GT || o == AtomOrder::EQ) return false;
  }
  return true;
}

inline bool is_strictly_maximal_at(size_t pos, const Clause& c, const Precedence& p) {
  for (size_t i = 0; i < c.literals.size(); ++i) {
    if (i == pos) continue;
    AtomOrder o = compare_atoms(p, c.literals[i].atom, c.literals[pos].atom);
    if (o == AtomOrder::GT || o == AtomOrder::EQ) return false;
  }
  return true;
}

inline bool is_maximal_at(size_t pos, const Clause& c, const Precedence& p) {
  for (size_t i = 0; i < c.literals.size(); ++i) {
    if (i == pos) continue;
    if (compare_atoms(p, c.literals[i].atom, c.literals[pos].atom) == AtomOrder::GT)
      return false;
  }
  return true;
}

inline bool is_maximal(const Literal& lit, const Clause& c, const Precedence& p) {
  for (const auto& other : c.literals) {
    if (&other == &lit) continue;
    if (compare_atoms(p, other.atom, lit.atom) == AtomOrder::GT) return false;
  }
  return true;
}

/// Selection strategy for Ordered resolution with selection. Selected
/// positions must hold negative literals.
struct SelectionFn {
  enum class Mode { None, AllNegative, Explicit } mode = Mode::None;
  std::map<int, std::set<size_t>> table;  // clause id -> positions

  static SelectionFn none() { return SelectionFn{}; }
  static SelectionFn all_negative() { return SelectionFn{Mode::AllNegative, {}}; }
  static SelectionFn explicit_table(std::map<int, std::set<size_t>> t) {
    return SelectionFn{Mode::Explicit, std::move(t)};
  }
};

inline std::set<size_t> selected_positions(const SelectionFn& s, const Clause& c) {
  switch (s.mode) {
    case SelectionFn::Mode::None:
      return {};
    case SelectionFn::Mode::AllNegative: {
      std::set<size_t> out;
      for (size_t i = 0; i < c.literals.size(); ++i)
        if (!c.literals[i].positive) out.insert(i);
      return out;
    }
    case SelectionFn::Mode::Explicit: {
      auto it = s.table.find(c.id);
      if (it == s.table.end()) return {};
      for (size_t pos : it->second) {
        if (pos >= c.literals.size() || c.literals[pos].positive)
          throw std::invalid_argument("selection table points at a non-negative literal");
      }
      return it->second;
    }
  }
  return {};
}

}  // namespace polres

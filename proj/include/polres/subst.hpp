#pragma once

#include <map>
#include <optional>

#include "polres/term.hpp"

namespace polres {

/// Finite mapping from variables to terms. Unification produces
/// idempotent substitutions; bindings x := x are never stored.
struct Substitution {
  std::map<VarId, Term> map;

  bool empty() const { return map.empty(); }

  std::optional<Term> lookup(VarId v) const {
    auto it = map.find(v);
    if (it == map.end()) return std::nullopt;
    return it->second;
  }

  void bind(VarId v, Term t) {
    if (t.is_var() && t.var == v) return;
    map[v] = std::move(t);
  }

  friend bool operator==(const Substitution& a, const Substitution& b) {
    return a.map == b.map;
  }
};

inline Term apply(const Substitution& s, const Term& t) {
  if (t.is_var()) {
    if (auto bound = s.lookup(t.var)) return *bound;
    return t;
  }
  Term r = t;
  for (auto& a : r.args) a = apply(s, a);
  return r;
}

inline Atom apply(const Substitution& s, const Atom& a) {
  Atom r = a;
  for (auto& t : r.args) t = apply(s, t);
  return r;
}

inline Literal apply(const Substitution& s, const Literal& l) {
  return Literal{l.positive, apply(s, l.atom)};
}

inline Clause apply(const Substitution& s, const Clause& c) {
  Clause r = c;
  for (auto& l : r.literals) l = apply(s, l);
  return r;
}

/// s2 after s1: apply(compose(s1,s2), t) == apply(s2, apply(s1, t)).
inline Substitution compose(const Substitution& s1, const Substitution& s2) {
  Substitution r;
  for (const auto& [v, t] : s1.map) r.bind(v, apply(s2, t));
  for (const auto& [v, t] : s2.map)
    if (!r.map.count(v) && !s1.map.count(v)) r.bind(v, t);
  return r;
}

enum class UnifyFailure { Clash, OccursCheck };

struct UnifyResult {
  std::optional<Substitution> mgu;
  UnifyFailure failure = UnifyFailure::Clash;  // meaningful only on failure

  explicit operator bool() const { return mgu.has_value(); }
};

namespace detail {

inline bool unify_terms(const Term& a, const Term& b, Substitution& s, UnifyFailure& why) {
  Term x = apply(s, a);
  Term y = apply(s, b);
  if (x.is_var()) {
    if (y.is_var() && y.var == x.var) return true;
    if (occurs_in(x.var, y)) {
      why = UnifyFailure::OccursCheck;
      return false;
    }
    // Keep the substitution idempotent: fold the new binding into all ranges.
    Substitution one;
    one.bind(x.var, y);
    for (auto& [v, t] : s.map) t = apply(one, t);
    s.bind(x.var, y);
    return true;
  }
  if (y.is_var()) return unify_terms(y, x, s, why);
  if (x.fn != y.fn) {
    why = UnifyFailure::Clash;
    return false;
  }
  for (size_t i = 0; i < x.args.size(); ++i)
    if (!unify_terms(x.args[i], y.args[i], s, why)) return false;
  return true;
}

}  // namespace detail

/// Robinson unification with occurs-check, syntactic only.
inline UnifyResult unify(const Atom& a, const Atom& b) {
  UnifyResult r;
  if (a.pred != b.pred) {
    r.failure = UnifyFailure::Clash;
    return r;
  }
  Substitution s;
  UnifyFailure why = UnifyFailure::Clash;
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (!detail::unify_terms(a.args[i], b.args[i], s, why)) {
      r.failure = why;
      return r;
    }
  }
  r.mgu = std::move(s);
  return r;
}

/// One-way matching: find s with apply(s, pattern) == target, binding
/// only the pattern's variables.
inline bool match_term(const Term& pattern, const Term& target, Substitution& s) {
  if (pattern.is_var()) {
    if (auto bound = s.lookup(pattern.var)) return *bound == target;
    s.bind(pattern.var, target);
    return true;
  }
  if (target.is_var()) return false;
  if (pattern.fn != target.fn) return false;
  for (size_t i = 0; i < pattern.args.size(); ++i)
    if (!match_term(pattern.args[i], target.args[i], s)) return false;
  return true;
}

inline std::optional<Substitution> match(const Atom& pattern, const Atom& target) {
  if (pattern.pred != target.pred) return std::nullopt;
  Substitution s;
  for (size_t i = 0; i < pattern.args.size(); ++i)
    if (!match_term(pattern.args[i], target.args[i], s)) return std::nullopt;
  return s;
}

/// Rename c so that its variables avoid `reserved`. Fresh ids come from
/// the global table; fresh names are derived from `name_counter` when
/// given so that repeated runs print identically.
inline Clause rename_apart(const Clause& c, const std::set<VarId>& reserved,
                           int* name_counter = nullptr) {
  auto cvars = vars_of(c);
  Substitution ren;
  for (VarId v : cvars) {
    if (!reserved.count(v)) continue;
    std::string nm;
    if (name_counter)
      nm = var_name(v) + "_" + std::to_string((*name_counter)++);
    else
      nm = var_name(v) + "'";
    ren.bind(v, Term::variable(fresh_var(nm)));
  }
  return apply(ren, c);
}

namespace detail {

inline bool variant_map(const Term& a, const Term& b, std::map<VarId, VarId>& fwd,
                        std::map<VarId, VarId>& bwd) {
  if (a.is_var() != b.is_var()) return false;
  if (a.is_var()) {
    auto f = fwd.find(a.var);
    auto g = bwd.find(b.var);
    if (f == fwd.end() && g == bwd.end()) {
      fwd[a.var] = b.var;
      bwd[b.var] = a.var;
      return true;
    }
    return f != fwd.end() && g != bwd.end() && f->second == b.var && g->second == a.var;
  }
  if (a.fn != b.fn) return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!variant_map(a.args[i], b.args[i], fwd, bwd)) return false;
  return true;
}

inline bool variant_literals(const std::vector<Literal>& as, const std::vector<Literal>& bs,
                             size_t i, std::vector<bool>& used, std::map<VarId, VarId>& fwd,
                             std::map<VarId, VarId>& bwd) {
  if (i == as.size()) return true;
  for (size_t j = 0; j < bs.size(); ++j) {
    if (used[j]) continue;
    if (as[i].positive != bs[j].positive) continue;
    if (as[i].atom.pred != bs[j].atom.pred) continue;
    auto f2 = fwd;
    auto b2 = bwd;
    bool ok = true;
    for (size_t k = 0; k < as[i].atom.args.size() && ok; ++k)
      ok = variant_map(as[i].atom.args[k], bs[j].atom.args[k], f2, b2);
    if (!ok) continue;
    used[j] = true;
    if (variant_literals(as, bs, i + 1, used, f2, b2)) {
      fwd = f2;
      bwd = b2;
      return true;
    }
    used[j] = false;
  }
  return false;
}

}  // namespace detail

/// True iff some bijective variable renaming maps c1's literal multiset
/// onto c2's. Roles are ignored.
inline bool is_variant(const Clause& c1, const Clause& c2) {
  if (c1.literals.size() != c2.literals.size()) return false;
  std::vector<bool> used(c2.literals.size(), false);
  std::map<VarId, VarId> fwd, bwd;
  return detail::variant_literals(c1.literals, c2.literals, 0, used, fwd, bwd);
}

}  // namespace polres

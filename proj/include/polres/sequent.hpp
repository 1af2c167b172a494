#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "polres/prop.hpp"
#include "polres/rewrite.hpp"

namespace polres {

/// Two-sided sequent; both sides are multisets kept as vectors.
struct Sequent {
  std::vector<Prop> gamma;
  std::vector<Prop> delta;
};

inline std::string to_string(const Sequent& s) {
  std::string out;
  for (size_t i = 0; i < s.gamma.size(); ++i) {
    if (i) out += ", ";
    out += to_string(s.gamma[i]);
  }
  out += " |- ";
  for (size_t i = 0; i < s.delta.size(); ++i) {
    if (i) out += ", ";
    out += to_string(s.delta[i]);
  }
  return out;
}

enum class RuleTag {
  Axiom,
  Cut,
  ContrLeft,
  ContrRight,
  WeakLeft,
  WeakRight,
  BotLeft,
  NegLeft,
  NegRight,
  OrLeft,
  OrRight,
  ForallLeft,
  ForallRight,
};

inline const char* rule_name(RuleTag t) {
  switch (t) {
    case RuleTag::Axiom: return "axiom";
    case RuleTag::Cut: return "cut";
    case RuleTag::ContrLeft: return "contr-left";
    case RuleTag::ContrRight: return "contr-right";
    case RuleTag::WeakLeft: return "weak-left";
    case RuleTag::WeakRight: return "weak-right";
    case RuleTag::BotLeft: return "bot-left";
    case RuleTag::NegLeft: return "neg-left";
    case RuleTag::NegRight: return "neg-right";
    case RuleTag::OrLeft: return "or-left";
    case RuleTag::OrRight: return "or-right";
    case RuleTag::ForallLeft: return "forall-left";
    case RuleTag::ForallRight: return "forall-right";
  }
  return "?";
}

inline std::optional<RuleTag> rule_from_name(const std::string& s) {
  for (RuleTag t :
       {RuleTag::Axiom, RuleTag::Cut, RuleTag::ContrLeft, RuleTag::ContrRight,
        RuleTag::WeakLeft, RuleTag::WeakRight, RuleTag::BotLeft, RuleTag::NegLeft,
        RuleTag::NegRight, RuleTag::OrLeft, RuleTag::OrRight, RuleTag::ForallLeft,
        RuleTag::ForallRight})
    if (s == rule_name(t)) return t;
  return std::nullopt;
}

/// One node of a proof object. Which fields are meaningful depends on
/// the rule:
///   axiom        p (the shared atomic target), trace1, trace2
///   cut          p=A q=B r=C, trace1 (A->-*B), trace2 (A->+*C)
///   contr-left   index, q=B r=C, trace1, trace2
///   contr-right  index, q=B r=C, trace1, trace2
///   weak-left/right   index
///   bot-left     index, trace1 (A->-*false)
///   neg-left/right    index, q=B, trace1
///   or-left/right     index, q=B r=C, trace1
///   forall-left  index, var, q=B, term, trace1, r=C, trace2
///   forall-right index, var, q=B, trace1
/// Left-rule indexes address gamma, right-rule indexes address delta.
/// Premises are built by removing the principal formula and appending
/// the new formulas at the end of the relevant side.
struct ProofTree {
  RuleTag rule = RuleTag::Axiom;
  size_t index = 0;
  Prop p, q, r;
  VarId var = -1;
  Term term;
  RewriteTrace trace1, trace2;
  std::vector<ProofTree> children;
};

inline bool has_cut(const ProofTree& t) {
  if (t.rule == RuleTag::Cut) return true;
  for (const auto& c : t.children)
    if (has_cut(c)) return true;
  return false;
}

struct CheckResult {
  bool ok = true;
  std::string path;    // dotted child indexes, empty for the root
  std::string reason;
};

namespace detail {

inline std::vector<Prop> erased(const std::vector<Prop>& v, size_t i) {
  std::vector<Prop> r = v;
  r.erase(r.begin() + static_cast<long>(i));
  return r;
}

inline CheckResult fail_at(const std::string& path, std::string reason) {
  return CheckResult{false, path, std::move(reason)};
}

inline CheckResult check_node(const std::vector<PolarizedRule>& system, const Sequent& goal,
                              const ProofTree& t, const std::string& path) {
  auto recurse = [&](const Sequent& g, size_t child) {
    std::string p = path.empty() ? std::to_string(child) : path + "." + std::to_string(child);
    return check_node(system, g, t.children[child], p);
  };
  auto witness = [&](const Prop& source, Sign start, const RewriteTrace& tr,
                     const Prop& target, const char* what) -> std::optional<CheckResult> {
    auto got = replay_trace(source, start, system, tr);
    if (!got) return fail_at(path, std::string(what) + ": trace replay failed");
    if (*got != target) return fail_at(path, std::string(what) + ": trace does not reach target");
    return std::nullopt;
  };
  auto need_children = [&](size_t n) -> std::optional<CheckResult> {
    if (t.children.size() != n)
      return fail_at(path, std::string(rule_name(t.rule)) + ": expected " + std::to_string(n) +
                               " premise(s), got " + std::to_string(t.children.size()));
    return std::nullopt;
  };

  switch (t.rule) {
    case RuleTag::Axiom: {
      if (auto e = need_children(0)) return *e;
      if (goal.gamma.size() != 1 || goal.delta.size() != 1)
        return fail_at(path, "axiom: sequent must be A |- B");
      if (!t.p.is_atomic()) return fail_at(path, "axiom: target is not atomic");
      if (auto e = witness(goal.gamma[0], Sign::Neg, t.trace1, t.p, "A ->-* P not witnessed"))
        return *e;
      if (auto e = witness(goal.delta[0], Sign::Pos, t.trace2, t.p, "B ->+* P not witnessed"))
        return *e;
      return {};
    }
    case RuleTag::Cut: {
      if (auto e = need_children(2)) return *e;
      if (auto e = witness(t.p, Sign::Neg, t.trace1, t.q, "A ->-* B not witnessed")) return *e;
      if (auto e = witness(t.p, Sign::Pos, t.trace2, t.r, "A ->+* C not witnessed")) return *e;
      Sequent left = goal;
      left.gamma.push_back(t.q);
      if (auto e = recurse(left, 0); !e.ok) return e;
      Sequent right = goal;
      right.delta.push_back(t.r);
      return recurse(right, 1);
    }
    case RuleTag::ContrLeft: {
      if (auto e = need_children(1)) return *e;
      if (t.index >= goal.gamma.size()) return fail_at(path, "contr-left: bad index");
      const Prop& a = goal.gamma[t.index];
      if (auto e = witness(a, Sign::Neg, t.trace1, t.q, "A ->-* B not witnessed")) return *e;
      if (auto e = witness(a, Sign::Neg, t.trace2, t.r, "A ->-* C not witnessed")) return *e;
      Sequent g{erased(goal.gamma, t.index), goal.delta};
      g.gamma.push_back(t.q);
      g.gamma.push_back(t.r);
      return recurse(g, 0);
    }
    case RuleTag::ContrRight: {
      if (auto e = need_children(1)) return *e;
      if (t.index >= goal.delta.size()) return fail_at(path, "contr-right: bad index");
      const Prop& a = goal.delta[t.index];
      if (auto e = witness(a, Sign::Pos, t.trace1, t.q, "A ->+* B not witnessed")) return *e;
      if (auto e = witness(a, Sign::Pos, t.trace2, t.r, "A ->+* C not witnessed")) return *e;
      Sequent g{goal.gamma, erased(goal.delta, t.index)};
      g.delta.push_back(t.q);
      g.delta.push_back(t.r);
      return recurse(g, 0);
    }
    case RuleTag::WeakLeft: {
      if (auto e = need_children(1)) return *e;
      if (t.index >= goal.gamma.size()) return fail_at(path, "weak-left: bad index");
      return recurse(Sequent{erased(goal.gamma, t.index), goal.delta}, 0);
    }
    case RuleTag::WeakRight: {
      if (auto e = need_children(1)) return *e;
      if (t.index >= goal.delta.size()) return fail_at(path, "weak-right: bad index");
      return recurse(Sequent{goal.gamma, erased(goal.delta, t.index)}, 0);
    }
    case RuleTag::BotLeft: {
      if (auto e = need_children(0)) return *e;
      if (t.index >= goal.gamma.size()) return fail_at(path, "bot-left: bad index");
      return witness(goal.gamma[t.index], Sign::Neg, t.trace1, Prop::falsum(),
                     "A ->-* false not witnessed")
          .value_or(CheckResult{});
    }
    case RuleTag::NegLeft: {
      if (auto e = need_children(1)) return *e;
      if (t.index >= goal.gamma.size()) return fail_at(path, "neg-left: bad index");
      if (auto e = witness(goal.gamma[t.index], Sign::Neg, t.trace1, Prop::neg(t.q),
                           "A ->-* ~B not witnessed"))
        return *e;
      Sequent g{erased(goal.gamma, t.index), goal.delta};
      g.delta.push_back(t.q);
      return recurse(g, 0);
    }
    case RuleTag::NegRight: {
      if (auto e = need_children(1)) return *e;
      if (t.index >= goal.delta.size()) return fail_at(path, "neg-right: bad index");
      if (auto e = witness(goal.delta[t.index], Sign::Pos, t.trace1, Prop::neg(t.q),
                           "A ->+* ~B not witnessed"))
        return *e;
      Sequent g{goal.gamma, erased(goal.delta, t.index)};
      g.gamma.push_back(t.q);
      return recurse(g, 0);
    }
    case RuleTag::OrLeft: {
      if (auto e = need_children(2)) return *e;
      if (t.index >= goal.gamma.size()) return fail_at(path, "or-left: bad index");
      if (auto e = witness(goal.gamma[t.index], Sign::Neg, t.trace1, Prop::disj(t.q, t.r),
                           "A ->-* (B \\/ C) not witnessed"))
        return *e;
      Sequent gb{erased(goal.gamma, t.index), goal.delta};
      gb.gamma.push_back(t.q);
      if (auto e = recurse(gb, 0); !e.ok) return e;
      Sequent gc{erased(goal.gamma, t.index), goal.delta};
      gc.gamma.push_back(t.r);
      return recurse(gc, 1);
    }
    case RuleTag::OrRight: {
      if (auto e = need_children(1)) return *e;
      if (t.index >= goal.delta.size()) return fail_at(path, "or-right: bad index");
      if (auto e = witness(goal.delta[t.index], Sign::Pos, t.trace1, Prop::disj(t.q, t.r),
                           "A ->+* (B \\/ C) not witnessed"))
        return *e;
      Sequent g{goal.gamma, erased(goal.delta, t.index)};
      g.delta.push_back(t.q);
      g.delta.push_back(t.r);
      return recurse(g, 0);
    }
    case RuleTag::ForallLeft: {
      if (auto e = need_children(1)) return *e;
      if (t.index >= goal.gamma.size()) return fail_at(path, "forall-left: bad index");
      if (auto e = witness(goal.gamma[t.index], Sign::Neg, t.trace1,
                           Prop::forall(t.var, t.q), "A ->-* forall x B not witnessed"))
        return *e;
      Substitution inst;
      inst.bind(t.var, t.term);
      Prop instantiated = apply(inst, t.q);
      if (auto e = witness(instantiated, Sign::Neg, t.trace2, t.r,
                           "(t/x)B ->-* C not witnessed"))
        return *e;
      Sequent g{erased(goal.gamma, t.index), goal.delta};
      g.gamma.push_back(t.r);
      return recurse(g, 0);
    }
    case RuleTag::ForallRight: {
      if (auto e = need_children(1)) return *e;
      if (t.index >= goal.delta.size()) return fail_at(path, "forall-right: bad index");
      if (auto e = witness(goal.delta[t.index], Sign::Pos, t.trace1,
                           Prop::forall(t.var, t.q), "A ->+* forall x B not witnessed"))
        return *e;
      // Eigenvariable condition: x not free in the rest of the sequent.
      for (size_t i = 0; i < goal.gamma.size(); ++i)
        if (free_vars(goal.gamma[i]).count(t.var))
          return fail_at(path, "forall-right: eigenvariable occurs free in the sequent");
      for (size_t i = 0; i < goal.delta.size(); ++i)
        if (i != t.index && free_vars(goal.delta[i]).count(t.var))
          return fail_at(path, "forall-right: eigenvariable occurs free in the sequent");
      Sequent g{goal.gamma, erased(goal.delta, t.index)};
      g.delta.push_back(t.q);
      return recurse(g, 0);
    }
  }
  return fail_at(path, "unknown rule");
}

/// Canonical, alpha-invariant rendering used for memoization keys.
inline std::string canon(const Prop& p, std::map<VarId, int>& bound, int& next) {
  switch (p.kind()) {
    case Prop::Kind::Atomic: {
      struct W {
        const std::map<VarId, int>& bound;
        std::string term(const Term& t) const {
          if (t.is_var()) {
            auto it = bound.find(t.var);
            if (it != bound.end()) return "b" + std::to_string(it->second);
            return "f" + std::to_string(t.var);
          }
          std::string s = t.fn.name + "(";
          for (const auto& a : t.args) s += term(a) + ",";
          return s + ")";
        }
      } w{bound};
      std::string s = p.atom().pred.name + "(";
      for (const auto& a : p.atom().args) s += w.term(a) + ",";
      return s + ")";
    }
    case Prop::Kind::Falsum:
      return "F";
    case Prop::Kind::Neg:
      return "~" + canon(p.child(), bound, next);
    case Prop::Kind::Or: {
      std::string l = canon(p.left(), bound, next);
      return "(" + l + "|" + canon(p.right(), bound, next) + ")";
    }
    case Prop::Kind::Forall: {
      auto saved = bound;
      bound[p.bound_var()] = next++;
      std::string s = "A." + canon(p.child(), bound, next);
      bound = saved;
      return s;
    }
  }
  return "?";
}

inline std::string canon(const Prop& p) {
  std::map<VarId, int> bound;
  int next = 0;
  return canon(p, bound, next);
}

inline std::string canon(const Sequent& s) {
  std::vector<std::string> g, d;
  for (const auto& p : s.gamma) g.push_back(canon(p));
  for (const auto& p : s.delta) d.push_back(canon(p));
  std::sort(g.begin(), g.end());
  std::sort(d.begin(), d.end());
  std::string out;
  for (const auto& x : g) out += x + ";";
  out += "|-";
  for (const auto& x : d) out += x + ";";
  return out;
}

}  // namespace detail

/// Verify a proof object against Fig.-style side conditions: every
/// rewrite witness must replay, the eigenvariable condition must hold,
/// and premise shapes must match the rule.
inline CheckResult check_proof(const std::vector<PolarizedRule>& system, const Sequent& goal,
                               const ProofTree& proof) {
  return detail::check_node(system, goal, proof, "");
}

namespace detail {

struct SearchCtx {
  const std::vector<PolarizedRule>& system;
  const std::vector<Term>& universe;
  int fuel;
  std::set<std::string> on_path;          // loop detection along the current branch
  std::map<std::string, int> failed;      // sequent key -> depth the failure covers
  int eigen_counter = 0;
  bool pruned = false;  // subtree failure involved an on-path cutoff
};

std::optional<ProofTree> search(SearchCtx& ctx, const Sequent& goal, int depth);

inline std::optional<ProofTree> try_children(SearchCtx& ctx, ProofTree node,
                                             const std::vector<Sequent>& premises, int depth) {
  for (const auto& g : premises) {
    auto sub = search(ctx, g, depth - 1);
    if (!sub) return std::nullopt;
    node.children.push_back(std::move(*sub));
  }
  return node;
}

inline std::optional<ProofTree> search(SearchCtx& ctx, const Sequent& goal, int depth) {
  if (depth < 0) return std::nullopt;
  std::string key = canon(goal);
  if (ctx.on_path.count(key)) {
    ctx.pruned = true;
    return std::nullopt;
  }
  auto f = ctx.failed.find(key);
  if (f != ctx.failed.end() && f->second >= depth) return std::nullopt;
  ctx.on_path.insert(key);
  bool outer_pruned = ctx.pruned;
  ctx.pruned = false;
  struct PathGuard {
    SearchCtx& ctx;
    std::string key;
    bool outer_pruned;
    ~PathGuard() {
      ctx.on_path.erase(key);
      ctx.pruned = ctx.pruned || outer_pruned;
    }
  } guard{ctx, key, outer_pruned};

  auto reach_neg = [&](const Prop& a) { return reachable(a, Sign::Neg, ctx.fuel, ctx.system); };
  auto reach_pos = [&](const Prop& a) { return reachable(a, Sign::Pos, ctx.fuel, ctx.system); };

  // axiom
  if (goal.gamma.size() == 1 && goal.delta.size() == 1) {
    auto rn = reach_neg(goal.gamma[0]);
    auto rp = reach_pos(goal.delta[0]);
    for (const auto& [pn, tn] : rn) {
      if (!pn.is_atomic()) continue;
      for (const auto& [pp, tp] : rp) {
        if (!pp.is_atomic() || pn != pp) continue;
        ProofTree node;
        node.rule = RuleTag::Axiom;
        node.p = pn;
        node.trace1 = tn;
        node.trace2 = tp;
        return node;
      }
    }
  }

  // bot-left
  for (size_t i = 0; i < goal.gamma.size(); ++i) {
    if (auto tr = rewrites_to(goal.gamma[i], Sign::Neg, Prop::falsum(), ctx.fuel, ctx.system)) {
      ProofTree node;
      node.rule = RuleTag::BotLeft;
      node.index = i;
      node.trace1 = *tr;
      return node;
    }
  }

  // neg-left / or-left / forall-left candidates from gamma
  for (size_t i = 0; i < goal.gamma.size(); ++i) {
    for (const auto& [q, tr] : reach_neg(goal.gamma[i])) {
      if (q.kind() == Prop::Kind::Neg) {
        ProofTree node;
        node.rule = RuleTag::NegLeft;
        node.index = i;
        node.q = q.child();
        node.trace1 = tr;
        Sequent g{erased(goal.gamma, i), goal.delta};
        g.delta.push_back(q.child());
        if (auto r = try_children(ctx, std::move(node), {g}, depth)) return r;
      } else if (q.kind() == Prop::Kind::Or) {
        ProofTree node;
        node.rule = RuleTag::OrLeft;
        node.index = i;
        node.q = q.left();
        node.r = q.right();
        node.trace1 = tr;
        Sequent gb{erased(goal.gamma, i), goal.delta};
        gb.gamma.push_back(q.left());
        Sequent gc{erased(goal.gamma, i), goal.delta};
        gc.gamma.push_back(q.right());
        if (auto r = try_children(ctx, std::move(node), {gb, gc}, depth)) return r;
      }
    }
  }

  // neg-right / or-right / forall-right candidates from delta
  for (size_t i = 0; i < goal.delta.size(); ++i) {
    for (const auto& [q, tr] : reach_pos(goal.delta[i])) {
      if (q.kind() == Prop::Kind::Neg) {
        ProofTree node;
        node.rule = RuleTag::NegRight;
        node.index = i;
        node.q = q.child();
        node.trace1 = tr;
        Sequent g{goal.gamma, erased(goal.delta, i)};
        g.gamma.push_back(q.child());
        if (auto r = try_children(ctx, std::move(node), {g}, depth)) return r;
      } else if (q.kind() == Prop::Kind::Or) {
        ProofTree node;
        node.rule = RuleTag::OrRight;
        node.index = i;
        node.q = q.left();
        node.r = q.right();
        node.trace1 = tr;
        Sequent g{goal.gamma, erased(goal.delta, i)};
        g.delta.push_back(q.left());
        g.delta.push_back(q.right());
        if (auto r = try_children(ctx, std::move(node), {g}, depth)) return r;
      } else if (q.kind() == Prop::Kind::Forall) {
        // Fresh eigenvariable; rename the bound variable to it.
        VarId eigen = fresh_var("v" + std::to_string(ctx.eigen_counter++));
        Substitution ren;
        ren.bind(q.bound_var(), Term::variable(eigen));
        Prop body = apply(ren, q.child());
        ProofTree node;
        node.rule = RuleTag::ForallRight;
        node.index = i;
        node.var = eigen;
        node.q = body;
        node.trace1 = tr;
        Sequent g{goal.gamma, erased(goal.delta, i)};
        g.delta.push_back(body);
        if (auto r = try_children(ctx, std::move(node), {g}, depth)) return r;
      }
    }
  }

  // forall-left
  for (size_t i = 0; i < goal.gamma.size(); ++i) {
    for (const auto& [q, tr] : reach_neg(goal.gamma[i])) {
      if (q.kind() != Prop::Kind::Forall) continue;
      for (const auto& t : ctx.universe) {
        Substitution inst;
        inst.bind(q.bound_var(), t);
        Prop instantiated = apply(inst, q.child());
        for (const auto& [c, tr2] : reach_neg(instantiated)) {
          ProofTree node;
          node.rule = RuleTag::ForallLeft;
          node.index = i;
          node.var = q.bound_var();
          node.q = q.child();
          node.term = t;
          node.trace1 = tr;
          node.r = c;
          node.trace2 = tr2;
          Sequent g{erased(goal.gamma, i), goal.delta};
          g.gamma.push_back(c);
          if (auto r = try_children(ctx, std::move(node), {g}, depth)) return r;
        }
      }
    }
  }

  // contraction: skip residue pairs where both sides are the principal
  // formula unchanged
  for (size_t i = 0; i < goal.gamma.size(); ++i) {
    const Prop& a = goal.gamma[i];
    auto rs = reach_neg(a);
    for (const auto& [b, tb] : rs) {
      for (const auto& [c, tc] : rs) {
        if (b == a && c == a) continue;
        ProofTree node;
        node.rule = RuleTag::ContrLeft;
        node.index = i;
        node.q = b;
        node.r = c;
        node.trace1 = tb;
        node.trace2 = tc;
        Sequent g{erased(goal.gamma, i), goal.delta};
        g.gamma.push_back(b);
        g.gamma.push_back(c);
        if (auto r = try_children(ctx, std::move(node), {g}, depth)) return r;
      }
    }
  }
  for (size_t i = 0; i < goal.delta.size(); ++i) {
    const Prop& a = goal.delta[i];
    auto rs = reach_pos(a);
    for (const auto& [b, tb] : rs) {
      for (const auto& [c, tc] : rs) {
        if (b == a && c == a) continue;
        ProofTree node;
        node.rule = RuleTag::ContrRight;
        node.index = i;
        node.q = b;
        node.r = c;
        node.trace1 = tb;
        node.trace2 = tc;
        Sequent g{goal.gamma, erased(goal.delta, i)};
        g.delta.push_back(b);
        g.delta.push_back(c);
        if (auto r = try_children(ctx, std::move(node), {g}, depth)) return r;
      }
    }
  }

  // weakening
  for (size_t i = 0; i < goal.gamma.size(); ++i) {
    ProofTree node;
    node.rule = RuleTag::WeakLeft;
    node.index = i;
    if (auto r = try_children(ctx, std::move(node), {Sequent{erased(goal.gamma, i), goal.delta}},
                              depth))
      return r;
  }
  for (size_t i = 0; i < goal.delta.size(); ++i) {
    ProofTree node;
    node.rule = RuleTag::WeakRight;
    node.index = i;
    if (auto r = try_children(ctx, std::move(node), {Sequent{goal.gamma, erased(goal.delta, i)}},
                              depth))
      return r;
  }

  // Only cache failures whose exploration never hit an on-path cutoff;
  // those are the only path-independent ones.
  if (!ctx.pruned) {
    auto& cached = ctx.failed[key];
    if (cached < depth) cached = depth;
  }
  return std::nullopt;
}

}  // namespace detail

/// Backward proof search over every rule except cut. Bounded in three
/// independent dimensions: tree depth, rewrite fuel, and the term
/// universe for forall-left. A none result means "no cut-free proof
/// within these bounds".
inline std::optional<ProofTree> cutfree_search(const std::vector<PolarizedRule>& system,
                                               const Sequent& goal, int depth,
                                               const std::vector<Term>& term_universe,
                                               int fuel) {
  detail::SearchCtx ctx{system, term_universe, fuel};
  return detail::search(ctx, goal, depth);
}

}  // namespace polres

#pragma once

#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polres/prop.hpp"
#include "polres/subst.hpp"
#include "polres/term.hpp"

namespace polres {

enum class Sign { Pos, Neg };

inline Sign flip(Sign s) { return s == Sign::Pos ? Sign::Neg : Sign::Pos; }
inline char sign_char(Sign s) { return s == Sign::Pos ? '+' : '-'; }

/// A polarized rewrite rule lhs ->- rhs or lhs ->+ rhs on atomic
/// propositions. FV(rhs) is always a subset of FV(lhs).
struct PolarizedRule {
  Sign sign = Sign::Neg;
  Atom lhs;
  Prop rhs;
  int id = 0;
};

inline std::string to_string(const PolarizedRule& r) {
  return std::string("rule") + sign_char(r.sign) + " " + to_string(r.lhs) + " -> " +
         to_string(r.rhs);
}

struct RewriteStep {
  PropPath position;
  int rule_id = 0;
  Substitution matcher;
};

/// Replayable witness for A ->±* B: the step list applied in order to
/// the source yields the target exactly.
struct RewriteTrace {
  std::vector<RewriteStep> steps;
};

/// Translate a one-way clause with selected literal L and rest C1..Cp:
/// negative L = ~P gives P ->- forall xs (C1 \/ ... \/ Cp), positive L
/// gives P ->+ ~forall xs (...), where xs are the rest's free variables
/// not free in P, in first-occurrence order. Empty rest gives false.
inline PolarizedRule clause_to_rule(const Clause& c, int rule_id = 0) {
  if (!c.one_way() || c.selected >= c.literals.size())
    throw std::invalid_argument("clause_to_rule: clause is not one-way");
  const Literal& sel = c.literals[c.selected];
  auto head_vars = vars_of(sel.atom);

  std::vector<Literal> rest;
  for (size_t i = 0; i < c.literals.size(); ++i)
    if (i != c.selected) rest.push_back(c.literals[i]);

  // Extra variables in first-occurrence order across the rest.
  std::vector<VarId> extra;
  std::set<VarId> seen;
  for (const auto& lit : rest) {
    std::vector<VarId> ordered;
    struct Walk {
      std::vector<VarId>& out;
      void term(const Term& t) {
        if (t.is_var()) {
          out.push_back(t.var);
          return;
        }
        for (const auto& a : t.args) term(a);
      }
    } w{ordered};
    for (const auto& t : lit.atom.args) w.term(t);
    for (VarId v : ordered) {
      if (head_vars.count(v) || seen.count(v)) continue;
      seen.insert(v);
      extra.push_back(v);
    }
  }

  Prop body;
  if (rest.empty()) {
    body = Prop::falsum();
  } else {
    auto lit_prop = [](const Literal& l) {
      Prop a = Prop::atomic(l.atom);
      return l.positive ? a : Prop::neg(a);
    };
    body = lit_prop(rest.back());
    for (size_t i = rest.size() - 1; i-- > 0;) body = Prop::disj(lit_prop(rest[i]), body);
  }
  for (size_t i = extra.size(); i-- > 0;) body = Prop::forall(extra[i], body);

  PolarizedRule r;
  r.id = rule_id;
  r.lhs = sel.atom;
  if (sel.positive) {
    r.sign = Sign::Pos;
    r.rhs = Prop::neg(body);
  } else {
    r.sign = Sign::Neg;
    r.rhs = body;
  }
  return r;
}

/// Sign of the subformula at `position`, starting from `start` at the
/// root: each negation flips, disjunction and quantifier preserve.
inline std::optional<Sign> occurrence_polarity(const Prop& p, const PropPath& position,
                                               Sign start) {
  Sign s = start;
  Prop cur = p;
  for (int step : position) {
    switch (cur.kind()) {
      case Prop::Kind::Neg:
        if (step != 0) return std::nullopt;
        s = flip(s);
        cur = cur.child();
        break;
      case Prop::Kind::Forall:
        if (step != 0) return std::nullopt;
        cur = cur.child();
        break;
      case Prop::Kind::Or:
        if (step == 0)
          cur = cur.left();
        else if (step == 1)
          cur = cur.right();
        else
          return std::nullopt;
        break;
      default:
        return std::nullopt;
    }
  }
  return s;
}

struct RewriteStepResult {
  std::optional<Prop> result;
  Substitution matcher;
  std::string error;  // set on failure
};

/// One rewrite step: the atom at `position` must match the rule's lhs
/// and sit at an occurrence whose polarity equals the rule's sign.
inline RewriteStepResult rewrite_step(const Prop& p, Sign start, const PolarizedRule& rule,
                                      const PropPath& position) {
  RewriteStepResult out;
  auto sub = subprop_at(p, position);
  if (!sub || !sub->is_atomic()) {
    out.error = "position does not address an atomic subformula";
    return out;
  }
  auto pol = occurrence_polarity(p, position, start);
  if (!pol || *pol != rule.sign) {
    out.error = "polarity mismatch";
    return out;
  }
  auto m = match(rule.lhs, sub->atom());
  if (!m) {
    out.error = "atom does not match rule left-hand side";
    return out;
  }
  out.matcher = *m;
  out.result = replace_at(p, position, apply(*m, rule.rhs));
  return out;
}

/// Replay a trace from `source` under `start`; returns the final
/// proposition or nullopt if any step fails.
inline std::optional<Prop> replay_trace(const Prop& source, Sign start,
                                        const std::vector<PolarizedRule>& system,
                                        const RewriteTrace& trace) {
  Prop cur = source;
  for (const auto& step : trace.steps) {
    const PolarizedRule* rule = nullptr;
    for (const auto& r : system)
      if (r.id == step.rule_id) rule = &r;
    if (!rule) return std::nullopt;
    auto res = rewrite_step(cur, start, *rule, step.position);
    if (!res.result) return std::nullopt;
    cur = *res.result;
  }
  return cur;
}

namespace detail {

inline void atomic_positions(const Prop& p, PropPath& prefix, std::vector<PropPath>& out) {
  switch (p.kind()) {
    case Prop::Kind::Atomic:
      out.push_back(prefix);
      return;
    case Prop::Kind::Falsum:
      return;
    case Prop::Kind::Neg:
    case Prop::Kind::Forall:
      prefix.push_back(0);
      atomic_positions(p.child(), prefix, out);
      prefix.pop_back();
      return;
    case Prop::Kind::Or:
      prefix.push_back(0);
      atomic_positions(p.left(), prefix, out);
      prefix.back() = 1;
      atomic_positions(p.right(), prefix, out);
      prefix.pop_back();
      return;
  }
}

}  // namespace detail

inline std::vector<PropPath> atomic_positions(const Prop& p) {
  PropPath prefix;
  std::vector<PropPath> out;
  detail::atomic_positions(p, prefix, out);
  return out;
}

/// All one-step successors of p under `start`, with the step taken.
inline std::vector<std::pair<Prop, RewriteStep>> rewrite_successors(
    const Prop& p, Sign start, const std::vector<PolarizedRule>& system) {
  std::vector<std::pair<Prop, RewriteStep>> out;
  for (const auto& pos : atomic_positions(p)) {
    for (const auto& rule : system) {
      auto res = rewrite_step(p, start, rule, pos);
      if (res.result) out.emplace_back(*res.result, RewriteStep{pos, rule.id, res.matcher});
    }
  }
  return out;
}

/// Breadth-first search for a ->±* b within `fuel` steps. Zero steps
/// succeed iff a equals b (up to bound-variable renaming).
inline std::optional<RewriteTrace> rewrites_to(const Prop& a, Sign start, const Prop& b,
                                               int fuel,
                                               const std::vector<PolarizedRule>& system) {
  struct Entry {
    Prop prop;
    RewriteTrace trace;
    int depth;
  };
  if (a == b) return RewriteTrace{};
  std::deque<Entry> queue{{a, {}, 0}};
  std::vector<Prop> seen{a};
  while (!queue.empty()) {
    Entry e = std::move(queue.front());
    queue.pop_front();
    if (e.depth >= fuel) continue;
    for (auto& [next, step] : rewrite_successors(e.prop, start, system)) {
      bool visited = false;
      for (const auto& s : seen)
        if (s == next) {
          visited = true;
          break;
        }
      if (visited) continue;
      RewriteTrace t = e.trace;
      t.steps.push_back(step);
      if (next == b) return t;
      seen.push_back(next);
      queue.push_back({next, std::move(t), e.depth + 1});
    }
  }
  return std::nullopt;
}

/// All propositions reachable from a under `start` within `fuel` steps,
/// each with a witnessing trace. Includes a itself (empty trace).
inline std::vector<std::pair<Prop, RewriteTrace>> reachable(
    const Prop& a, Sign start, int fuel, const std::vector<PolarizedRule>& system) {
  std::vector<std::pair<Prop, RewriteTrace>> out{{a, {}}};
  size_t frontier_begin = 0;
  for (int d = 0; d < fuel; ++d) {
    size_t frontier_end = out.size();
    for (size_t i = frontier_begin; i < frontier_end; ++i) {
      for (auto& [next, step] : rewrite_successors(out[i].first, start, system)) {
        bool visited = false;
        for (const auto& [p, t] : out)
          if (p == next) {
            visited = true;
            break;
          }
        if (visited) continue;
        RewriteTrace t = out[i].second;
        t.steps.push_back(step);
        out.emplace_back(next, std::move(t));
      }
    }
    if (out.size() == frontier_end) break;
    frontier_begin = frontier_end;
  }
  return out;
}

/// Cut-elimination sufficient condition: no negative-rule lhs unifies
/// with any positive-rule lhs (after renaming apart).
inline bool check_disjoint_criterion(const std::vector<PolarizedRule>& rules) {
  for (const auto& neg : rules) {
    if (neg.sign != Sign::Neg) continue;
    for (const auto& pos : rules) {
      if (pos.sign != Sign::Pos) continue;
      // Rename the positive lhs apart before unifying.
      Atom lhs2 = pos.lhs;
      Substitution ren;
      for (VarId v : vars_of(pos.lhs)) ren.bind(v, Term::variable(fresh_var(var_name(v) + "'")));
      lhs2 = apply(ren, lhs2);
      if (unify(neg.lhs, lhs2)) return false;
    }
  }
  return true;
}

}  // namespace polres

#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "polres/ordering.hpp"
#include "polres/subst.hpp"
#include "polres/term.hpp"

namespace polres {

/// Restriction policy for the resolution rule.
struct Policy {
  enum class Kind { Plain, SetOfSupport, OrderedSelection, PRM } kind = Kind::Plain;
  std::set<int> theory;  // SetOfSupport: input clause ids forming the theory
  Precedence precedence;
  SelectionFn selection;

  static Policy plain() { return Policy{}; }
  static Policy set_of_support(std::set<int> theory_ids) {
    Policy p;
    p.kind = Kind::SetOfSupport;
    p.theory = std::move(theory_ids);
    return p;
  }
  static Policy ordered_selection(Precedence prec, SelectionFn sel) {
    Policy p;
    p.kind = Kind::OrderedSelection;
    p.precedence = std::move(prec);
    p.selection = std::move(sel);
    return p;
  }
  static Policy prm() {
    Policy p;
    p.kind = Kind::PRM;
    return p;
  }

  std::string name() const {
    switch (kind) {
      case Kind::Plain: return "plain";
      case Kind::SetOfSupport: return "sos";
      case Kind::OrderedSelection: return "ordered";
      case Kind::PRM: return "prm";
    }
    return "?";
  }
};

namespace detail {

inline Clause without_literal(const Clause& c, size_t pos) {
  Clause r = c;
  r.literals.erase(r.literals.begin() + static_cast<long>(pos));
  return r;
}

/// ORS side conditions, evaluated on the unified premises.
/// c_pos holds the positive resolved literal at i_pos, c_neg the
/// negative one at i_neg.
inline bool ors_admits(const Policy& pol, const Clause& c_pos, size_t i_pos,
                       const Clause& c_neg, size_t i_neg, const Substitution& mgu) {
  Clause up = apply(mgu, c_pos);
  Clause un = apply(mgu, c_neg);
  if (!selected_positions(pol.selection, c_pos).empty()) return false;
  if (!is_strictly_maximal_at(i_pos, up, pol.precedence)) return false;
  auto sel = selected_positions(pol.selection, c_neg);
  if (!sel.empty()) return sel.count(i_neg) > 0;
  return is_maximal_at(i_neg, un, pol.precedence);
}

}  // namespace detail

/// All binary resolvents of c1 and c2 admitted by the policy.
/// Pre: c1 and c2 are renamed apart. Resolvents carry full provenance
/// but no id; their role is always ordinary.
inline std::vector<Clause> resolvents(const Clause& c1, const Clause& c2, const Policy& pol) {
  std::vector<Clause> out;

  if (pol.kind == Policy::Kind::SetOfSupport && pol.theory.count(c1.id) &&
      pol.theory.count(c2.id))
    return out;
  if (pol.kind == Policy::Kind::PRM && c1.one_way() && c2.one_way()) return out;

  for (size_t i = 0; i < c1.literals.size(); ++i) {
    for (size_t j = 0; j < c2.literals.size(); ++j) {
      const Literal& l1 = c1.literals[i];
      const Literal& l2 = c2.literals[j];
      if (l1.positive == l2.positive) continue;

      if (pol.kind == Policy::Kind::PRM) {
        if (c1.one_way() && c1.selected != i) continue;
        if (c2.one_way() && c2.selected != j) continue;
      }

      auto u = unify(l1.atom, l2.atom);
      if (!u) continue;

      if (pol.kind == Policy::Kind::OrderedSelection) {
        bool ok = l1.positive ? detail::ors_admits(pol, c1, i, c2, j, *u.mgu)
                              : detail::ors_admits(pol, c2, j, c1, i, *u.mgu);
        if (!ok) continue;
      }

      Clause r;
      r.role = ClauseRole::Ordinary;
      Clause rest1 = detail::without_literal(c1, i);
      Clause rest2 = detail::without_literal(c2, j);
      for (const auto& l : rest1.literals) r.literals.push_back(apply(*u.mgu, l));
      for (const auto& l : rest2.literals) r.literals.push_back(apply(*u.mgu, l));
      r.provenance.kind = Provenance::Kind::Resolvent;
      r.provenance.parents = {c1.id, c2.id};
      r.provenance.positions = {i, j};
      r.provenance.subst = u.mgu->map;
      r.provenance.premises = {c1.literals, c2.literals};
      out.push_back(std::move(r));
    }
  }
  return out;
}

/// Binary factoring: unify two same-polarity literals, drop the second.
/// OrderedSelection restricts to positive literals maximal after
/// unification; PRM never factors one-way clauses.
inline std::vector<Clause> factors(const Clause& c, const Policy& pol) {
  std::vector<Clause> out;
  if (pol.kind == Policy::Kind::PRM && c.one_way()) return out;

  for (size_t i = 0; i < c.literals.size(); ++i) {
    for (size_t j = i + 1; j < c.literals.size(); ++j) {
      if (c.literals[i].positive != c.literals[j].positive) continue;
      if (pol.kind == Policy::Kind::OrderedSelection && !c.literals[i].positive) continue;

      auto u = unify(c.literals[i].atom, c.literals[j].atom);
      if (!u) continue;

      if (pol.kind == Policy::Kind::OrderedSelection) {
        Clause uc = apply(*u.mgu, c);
        if (!is_maximal_at(i, uc, pol.precedence)) continue;
      }

      Clause r;
      r.role = ClauseRole::Ordinary;
      for (size_t k = 0; k < c.literals.size(); ++k)
        if (k != j) r.literals.push_back(apply(*u.mgu, c.literals[k]));
      r.provenance.kind = Provenance::Kind::Factor;
      r.provenance.parents = {c.id};
      r.provenance.positions = {i, j};
      r.provenance.subst = u.mgu->map;
      r.provenance.premises = {c.literals};
      out.push_back(std::move(r));
    }
  }
  return out;
}

struct SaturationOptions {
  bool subsumption = false;
};

struct SaturationResult {
  enum class Kind { Refuted, Saturated, BudgetExhausted } kind = Kind::Saturated;
  // Every kept clause (inputs included), indexed by id via `by_id`.
  std::vector<Clause> clauses;
  std::vector<int> active_ids;
  int empty_clause_id = -1;
  int generated = 0;
  int kept = 0;

  const Clause& by_id(int id) const {
    for (const auto& c : clauses)
      if (c.id == id) return c;
    throw std::out_of_range("no clause with id " + std::to_string(id));
  }
};

/// sigma(c) subsumes d when some instance of c's literal multiset is
/// contained in d's. Brute-force matching; desk-scale inputs only.
inline bool subsumes(const Clause& c, const Clause& d) {
  if (c.literals.size() > d.literals.size()) return false;
  std::vector<bool> used(d.literals.size(), false);
  struct Search {
    const Clause& c;
    const Clause& d;
    std::vector<bool>& used;
    bool go(size_t i, const Substitution& s) {
      if (i == c.literals.size()) return true;
      for (size_t j = 0; j < d.literals.size(); ++j) {
        if (used[j]) continue;
        if (c.literals[i].positive != d.literals[j].positive) continue;
        Substitution s2 = s;
        Atom inst = apply(s2, c.literals[i].atom);
        auto m = match(inst, d.literals[j].atom);
        if (!m) continue;
        used[j] = true;
        if (go(i + 1, compose(s2, *m))) return true;
        used[j] = false;
      }
      return false;
    }
  } search{c, d, used};
  return search.go(0, Substitution{});
}

/// Given-clause saturation. Deterministic for a fixed input order:
/// age-based FIFO, variant deletion only (subsumption opt-in).
inline SaturationResult saturate(const std::vector<Clause>& problem, const Policy& pol,
                                 int budget, const SaturationOptions& opts = {}) {
  SaturationResult res;
  int next_id = 1;
  int rename_counter = 0;

  std::deque<int> passive;
  for (const auto& in : problem) {
    Clause c = in;
    c.id = next_id++;
    c.generation = 0;
    c.provenance = Provenance{};
    res.clauses.push_back(c);
    passive.push_back(c.id);
    if (c.empty()) {
      res.kind = SaturationResult::Kind::Refuted;
      res.empty_clause_id = c.id;
      res.kept = static_cast<int>(res.clauses.size());
      return res;
    }
  }
  res.kept = static_cast<int>(res.clauses.size());

  auto keep = [&](Clause&& c) -> std::optional<int> {
    for (const auto& existing : res.clauses)
      if (is_variant(c, existing)) return std::nullopt;
    if (opts.subsumption)
      for (const auto& existing : res.clauses)
        if (subsumes(existing, c)) return std::nullopt;
    c.id = next_id++;
    res.clauses.push_back(std::move(c));
    res.kept++;
    return res.clauses.back().id;
  };

  while (!passive.empty()) {
    int given_id = passive.front();
    passive.pop_front();
    Clause given = res.by_id(given_id);
    res.active_ids.push_back(given_id);

    std::vector<Clause> inferred = factors(given, pol);
    for (int active_id : res.active_ids) {
      Clause other = res.by_id(active_id);
      Clause renamed = rename_apart(other, vars_of(given), &rename_counter);
      // resolvents() scans complementary pairs in both orientations, so
      // one call per unordered clause pair suffices.
      for (auto& r : resolvents(given, renamed, pol)) inferred.push_back(std::move(r));
    }

    for (auto& c : inferred) {
      res.generated++;
      c.generation = res.generated;
      if (res.generated > budget) {
        res.kind = SaturationResult::Kind::BudgetExhausted;
        return res;
      }
      bool empty = c.empty();
      auto id = keep(std::move(c));
      if (id && empty) {
        res.kind = SaturationResult::Kind::Refuted;
        res.empty_clause_id = *id;
        return res;
      }
      if (id) passive.push_back(*id);
    }
  }

  res.kind = SaturationResult::Kind::Saturated;
  return res;
}

/// Ids of the derivation DAG ending at `target`: the provenance closure,
/// in ascending id order.
inline std::vector<int> derivation_ids(const SaturationResult& res, int target) {
  std::set<int> seen;
  std::vector<int> stack{target};
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    if (!seen.insert(id).second) continue;
    for (int p : res.by_id(id).provenance.parents) stack.push_back(p);
  }
  return {seen.begin(), seen.end()};
}

/// Re-run the recorded inference of a derived clause and compare.
/// Uses the stored premise literals, so the replay is literal-exact.
inline bool replay_clause(const SaturationResult& res, const Clause& c) {
  const auto& pv = c.provenance;
  if (pv.kind == Provenance::Kind::Input) return true;
  Substitution s;
  s.map = pv.subst;

  // Stored premises must be variants of the recorded parents.
  for (size_t k = 0; k < pv.parents.size(); ++k) {
    Clause parent = res.by_id(pv.parents[k]);
    Clause premise;
    premise.literals = pv.premises[k];
    if (!is_variant(premise, parent)) return false;
  }

  if (pv.kind == Provenance::Kind::Resolvent) {
    const auto& p1 = pv.premises[0];
    const auto& p2 = pv.premises[1];
    size_t i = pv.positions[0], j = pv.positions[1];
    if (i >= p1.size() || j >= p2.size()) return false;
    if (p1[i].positive == p2[j].positive) return false;
    auto u = unify(p1[i].atom, p2[j].atom);
    if (!u) return false;
    if (apply(*u.mgu, p1[i].atom) != apply(*u.mgu, p2[j].atom)) return false;
    std::vector<Literal> lits;
    for (size_t k = 0; k < p1.size(); ++k)
      if (k != i) lits.push_back(apply(s, p1[k]));
    for (size_t k = 0; k < p2.size(); ++k)
      if (k != j) lits.push_back(apply(s, p2[k]));
    return lits == c.literals;
  }

  // Factor.
  const auto& p = pv.premises[0];
  size_t i = pv.positions[0], j = pv.positions[1];
  if (i >= p.size() || j >= p.size()) return false;
  if (p[i].positive != p[j].positive) return false;
  if (!unify(p[i].atom, p[j].atom)) return false;
  std::vector<Literal> lits;
  for (size_t k = 0; k < p.size(); ++k)
    if (k != j) lits.push_back(apply(s, p[k]));
  return lits == c.literals;
}

/// Replay every derived clause in the DAG ending at res.empty_clause_id.
inline bool replay_refutation(const SaturationResult& res) {
  if (res.kind != SaturationResult::Kind::Refuted) return false;
  const Clause& bottom = res.by_id(res.empty_clause_id);
  if (!bottom.empty()) return false;
  for (int id : derivation_ids(res, res.empty_clause_id))
    if (!replay_clause(res, res.by_id(id))) return false;
  return true;
}

/// One enumerated refutation: the instances participating in the DAG.
struct Refutation {
  struct Node {
    Clause clause;           // with instance-local provenance indices
    std::string signature;   // canonical derivation encoding
  };
  std::vector<Node> nodes;   // topological order, empty clause last
  std::string signature;

  bool contains_unit(const Literal& lit) const {
    for (const auto& n : nodes)
      if (n.clause.literals.size() == 1 && n.clause.literals[0] == lit) return true;
    return false;
  }
};

/// Exhaustive breadth-first enumeration of distinct refutation DAGs
/// under the Plain policy. Instances are never variant-deleted, so every
/// alternative derivation of the same clause survives; DAGs are distinct
/// when their (parents, positions) step sets differ. `instance_cap`
/// bounds the exploration.
inline std::vector<Refutation> enumerate_refutations(const std::vector<Clause>& problem,
                                                     int limit, int instance_cap = 2000) {
  struct Instance {
    Clause clause;
    std::string sig;
    std::vector<size_t> ancestors;  // instance indexes, inclusive of self
  };
  std::vector<Instance> insts;
  std::vector<Refutation> out;
  std::set<std::string> seen_sigs;
  Policy plain = Policy::plain();
  int rename_counter = 0;

  auto add_instance = [&](Clause&& c, std::string sig, std::vector<size_t> anc) {
    c.id = static_cast<int>(insts.size());
    anc.push_back(insts.size());
    std::sort(anc.begin(), anc.end());
    anc.erase(std::unique(anc.begin(), anc.end()), anc.end());
    insts.push_back({std::move(c), std::move(sig), std::move(anc)});
  };

  for (const auto& in : problem) {
    Clause c = in;
    c.provenance = Provenance{};
    add_instance(std::move(c), "in" + std::to_string(insts.size()), {});
  }

  auto emit = [&](size_t idx) {
    const Instance& bot = insts[idx];
    if (!seen_sigs.insert(bot.sig).second) return;
    Refutation r;
    r.signature = bot.sig;
    for (size_t a : bot.ancestors) r.nodes.push_back({insts[a].clause, insts[a].sig});
    out.push_back(std::move(r));
  };

  for (size_t k = 0; k < insts.size(); ++k) {
    if (static_cast<int>(out.size()) >= limit) break;
    if (static_cast<int>(insts.size()) >= instance_cap) break;
    if (insts[k].clause.empty()) {
      emit(k);
      continue;
    }

    std::vector<std::pair<Clause, std::vector<size_t>>> inferred;
    for (auto& f : factors(insts[k].clause, plain)) {
      f.provenance.parents = {static_cast<int>(k)};
      inferred.emplace_back(std::move(f), std::vector<size_t>{k});
    }
    for (size_t m = 0; m <= k; ++m) {
      Clause renamed = rename_apart(insts[m].clause, vars_of(insts[k].clause), &rename_counter);
      renamed.id = static_cast<int>(m);
      for (auto& r : resolvents(insts[k].clause, renamed, plain))
        inferred.emplace_back(std::move(r), std::vector<size_t>{k, m});
    }

    for (auto& [c, parent_idx] : inferred) {
      // Canonical signature: positive premise listed first for
      // resolvents, so mirrored pairings collapse to one DAG.
      std::string sig;
      std::vector<size_t> anc;
      if (c.provenance.kind == Provenance::Kind::Factor) {
        size_t p = parent_idx[0];
        sig = "F(" + insts[p].sig + "@" + std::to_string(c.provenance.positions[0]) + "," +
              std::to_string(c.provenance.positions[1]) + ")";
        anc = insts[p].ancestors;
      } else {
        size_t pa = static_cast<size_t>(c.provenance.parents[0]);
        size_t pb = static_cast<size_t>(c.provenance.parents[1]);
        size_t ia = c.provenance.positions[0], ib = c.provenance.positions[1];
        bool a_positive = c.provenance.premises[0][ia].positive;
        std::string sa = insts[pa].sig + "@" + std::to_string(ia);
        std::string sb = insts[pb].sig + "@" + std::to_string(ib);
        sig = a_positive ? "R(" + sa + ";" + sb + ")" : "R(" + sb + ";" + sa + ")";
        anc = insts[pa].ancestors;
        anc.insert(anc.end(), insts[pb].ancestors.begin(), insts[pb].ancestors.end());
      }
      // Skip rediscoveries of the same derivation.
      bool dup = false;
      for (const auto& inst : insts)
        if (inst.sig == sig) {
          dup = true;
          break;
        }
      if (dup) continue;
      bool empty = c.literals.empty();
      add_instance(std::move(c), sig, std::move(anc));
      if (empty) {
        emit(insts.size() - 1);
        if (static_cast<int>(out.size()) >= limit) return out;
      }
      if (static_cast<int>(insts.size()) >= instance_cap) return out;
    }
  }
  return out;
}

}  // namespace polres

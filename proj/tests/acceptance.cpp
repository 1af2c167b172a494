// Acceptance gate: one pass/fail line per criterion, nonzero exit if
// any criterion fails. Budgets and search bounds are pinned here.

#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "polres/polres.hpp"

using namespace polres;

namespace {

constexpr int kBudget = 50;        // saturation budget for all runs
constexpr int kLoopBudget = 20;    // budget for the looping SOS run
constexpr int kSearchDepth = 8;    // cut-free search depth bound
constexpr int kSearchFuel = 3;     // rewrite fuel for search

int failures = 0;
std::vector<std::string> notes;

void report(int n, const std::string& what, bool ok) {
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << n << ": " << what << "\n";
  for (const auto& note : notes) std::cout << "       " << note << "\n";
  notes.clear();
  if (!ok) failures++;
}

bool expect(bool cond, const std::string& detail) {
  if (!cond) notes.push_back("failed: " + detail);
  return cond;
}

Problem load(const std::string& name) { return *load_corpus_problem(name); }

// --- criterion 1: example1 outcome matrix ------------------------------

bool criterion1() {
  Problem p = load("example1");
  bool ok = true;

  auto prm = saturate(p.clauses, Policy::prm(), kBudget);
  ok &= expect(prm.kind == SaturationResult::Kind::Saturated, "prm should saturate");
  ok &= expect(prm.empty_clause_id == -1, "prm must not derive the empty clause");

  auto sos = saturate(p.clauses, Policy::set_of_support(p.theory_ids()), kBudget);
  ok &= expect(sos.kind == SaturationResult::Kind::Refuted, "sos should refute");

  MethodSpec ord;
  ord.method = "ordered";
  ord.precedence = "Q<P";
  auto ordered = saturate(p.clauses, make_policy(p, ord), kBudget);
  ok &= expect(ordered.kind == SaturationResult::Kind::Refuted, "ordered should refute");

  auto plain = saturate(p.clauses, Policy::plain(), kBudget);
  ok &= expect(plain.kind == SaturationResult::Kind::Refuted, "plain should refute");
  return ok;
}

// --- criterion 2: finite failure vs loop --------------------------------

bool criterion2() {
  Problem p = load("loop");
  bool ok = true;

  auto prm = saturate(p.clauses, Policy::prm(), kBudget);
  ok &= expect(prm.kind == SaturationResult::Kind::Saturated, "prm should saturate");
  ok &= expect(prm.generated == 0, "prm should make zero inferences");

  auto sos = saturate(p.clauses, Policy::set_of_support(p.theory_ids()), kLoopBudget);
  ok &= expect(sos.kind == SaturationResult::Kind::BudgetExhausted, "sos should exhaust budget");
  for (int i = 1; i <= 5; ++i) {
    std::string expected = "P(";
    for (int k = 0; k < i; ++k) expected += "f(";
    expected += "a";
    expected += std::string(static_cast<size_t>(i) + 1, ')');
    bool found = false;
    for (const auto& c : sos.clauses)
      if (c.generation == i && to_string(c) == expected) found = true;
    ok &= expect(found, expected + " at generation step " + std::to_string(i));
  }
  return ok;
}

// --- criterion 3: translation golden test --------------------------------

bool criterion3() {
  bool ok = true;

  std::string e1 = emit_rules(load("example1"));
  ok &= expect(e1 == "rule+ P -> ~Q.\nrule- P -> Q.\ncriterion: FAILS\n",
               "example1 rules/criterion, got:\n" + e1);

  std::string bbb = emit_rules(load("example_bbb"));
  const std::string expected_rules =
      "rule- eps(vee(X,Y)) -> (eps(X) \\/ eps(Y)).\n"
      "rule+ eps(vee(X,Y)) -> ~~eps(X).\n"
      "rule+ eps(vee(X,Y)) -> ~~eps(Y).\n"
      "rule- eps(neg(X)) -> ~eps(X).\n"
      "rule+ eps(neg(X)) -> ~eps(X).\n"
      "rule- eps(fa(X)) -> forall Y. eps(app(X,Y)).\n"
      "rule+ eps(fa(X)) -> ~~eps(app(X,h(X))).\n"
      "rule- eps(null(s(X))) -> false.\n"
      "rule+ eps(null(zero)) -> ~false.\n";
  ok &= expect(bbb.rfind(expected_rules, 0) == 0, "nine-rule table, got:\n" + bbb);
  ok &= expect(bbb.find("criterion: PASSES") != std::string::npos,
               "expected criterion PASSES for the nine-rule system; the implemented "
               "pairwise-non-unifiability check reports FAILS because the same left-hand "
               "sides occur among both the positive and the negative rules");
  return ok;
}

// --- criterion 4: cut witness ---------------------------------------------

bool criterion4() {
  bool ok = true;
  Problem p = load("example1");
  auto rules = p.rules();
  Sequent goal = parse_sequent("|- Q", p);
  ProofTree proof = parse_proof(
      "(cut (prop P) (prop Q) (prop ~Q)"
      " (trace (step pos= rule=2 sub={}))"
      " (trace (step pos= rule=1 sub={}))"
      " (axiom (prop Q) (trace) (trace))"
      " (neg-right 1 (prop Q) (trace)"
      "  (axiom (prop Q) (trace) (trace))))",
      p);

  auto res = check_proof(rules, goal, proof);
  ok &= expect(res.ok, "cut proof rejected at [" + res.path + "]: " + res.reason);
  ok &= expect(has_cut(proof), "has_cut should see the cut node");

  auto found = cutfree_search(rules, goal, kSearchDepth, {}, kSearchFuel);
  ok &= expect(!found, "no cut-free proof of |- Q should exist within the bounds");
  return ok;
}

// --- criterion 5: finite failure on the HOL theory ------------------------

bool criterion5() {
  Problem p = load("example_bbb");
  auto res = saturate(p.clauses, Policy::prm(), kBudget);
  bool ok = expect(res.kind == SaturationResult::Kind::Saturated, "prm should saturate");
  ok &= expect(res.generated == 0, "saturation should be immediate (0 inferences)");
  return ok;
}

// --- criterion 6: redundancy demo ----------------------------------------

bool criterion6() {
  Problem p = load("intro");
  auto refs = enumerate_refutations(p.clauses, 10);
  bool ok = expect(refs.size() >= 2, "at least two distinct refutation DAGs");

  Literal q{true, Atom{Symbol{"Q", 0, SymbolKind::Predicate}, {}}};
  Literal not_p{false, Atom{Symbol{"P", 0, SymbolKind::Predicate}, {}}};
  bool via_q = false, via_not_p = false;
  for (const auto& r : refs) {
    if (r.contains_unit(q) && !r.contains_unit(not_p)) via_q = true;
    if (r.contains_unit(not_p) && !r.contains_unit(q)) via_not_p = true;
  }
  ok &= expect(via_q, "a derivation resolving through Q first");
  ok &= expect(via_not_p, "a derivation resolving through ~P first");
  return ok;
}

// --- criterion 7: property suites -----------------------------------------

bool mgu_laws() {
  VarId x = fresh_var("X"), y = fresh_var("Y");
  Symbol P{"P", 2, SymbolKind::Predicate}, f{"f", 1, SymbolKind::Function},
      g{"g", 1, SymbolKind::Function}, a{"a", 0, SymbolKind::Function};
  std::mt19937 rng(7);
  auto random_term = [&](auto&& self, int depth) -> Term {
    switch (rng() % (depth > 0 ? 4 : 2)) {
      case 0: return Term::variable(x);
      case 1: return rng() % 2 ? Term::app(a) : Term::variable(y);
      case 2: return Term::app(f, {self(self, depth - 1)});
      default: return Term::app(g, {self(self, depth - 1)});
    }
  };
  int successes = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Atom l{P, {random_term(random_term, 2), random_term(random_term, 2)}};
    Atom r{P, {random_term(random_term, 2), random_term(random_term, 2)}};
    auto u = unify(l, r);
    if (!u) continue;
    successes++;
    if (apply(*u.mgu, l) != apply(*u.mgu, r)) return false;
    if (apply(*u.mgu, apply(*u.mgu, l)) != apply(*u.mgu, l)) return false;
  }
  return successes > 10;
}

bool ordering_stability() {
  VarId x = fresh_var("X"), y = fresh_var("Y");
  Symbol P{"P", 2, SymbolKind::Predicate}, f{"f", 1, SymbolKind::Function},
      a{"a", 0, SymbolKind::Function};
  Precedence prec = Precedence::from_lists({"P"}, {"a", "f"});
  std::mt19937 rng(11);
  auto random_term = [&](auto&& self, int depth) -> Term {
    switch (rng() % (depth > 0 ? 4 : 3)) {
      case 0: return Term::app(a);
      case 1: return Term::variable(x);
      case 2: return Term::variable(y);
      default: return Term::app(f, {self(self, depth - 1)});
    }
  };
  int checked = 0;
  while (checked < 200) {
    Atom l{P, {random_term(random_term, 2), random_term(random_term, 2)}};
    Atom r{P, {random_term(random_term, 2), random_term(random_term, 2)}};
    if (compare_atoms(prec, l, r) != AtomOrder::LT) continue;
    Substitution sub;
    sub.bind(x, random_term(random_term, 2));
    sub.bind(y, random_term(random_term, 2));
    if (compare_atoms(prec, apply(sub, l), apply(sub, r)) != AtomOrder::LT) return false;
    checked++;
  }
  return true;
}

bool subset_laws() {
  for (const auto& [name, text] : corpus()) {
    Problem p = parse_problem(text, name);
    std::vector<std::string> preds, fns;
    for (const auto& [n, ar] : p.predicate_arity) preds.push_back(n);
    for (const auto& [n, ar] : p.function_arity) fns.push_back(n);
    std::vector<Policy> restricted = {
        Policy::set_of_support(p.theory_ids()),
        Policy::ordered_selection(Precedence::from_lists(preds, fns), SelectionFn::none()),
        Policy::prm()};
    int rc = 0;
    for (const auto& c1 : p.clauses) {
      for (const auto& c2 : p.clauses) {
        Clause r2 = rename_apart(c2, vars_of(c1), &rc);
        r2.id = c2.id;
        auto base = resolvents(c1, r2, Policy::plain());
        for (const auto& pol : restricted) {
          for (const auto& r : resolvents(c1, r2, pol)) {
            bool found = false;
            for (const auto& b : base)
              if (is_variant(r, b)) found = true;
            if (!found) return false;
          }
        }
      }
    }
  }
  return true;
}

bool replay_soundness() {
  for (auto [name, pol] : std::vector<std::pair<std::string, Policy>>{
           {"intro", Policy::plain()},
           {"example1", Policy::set_of_support({1, 2})},
           {"example_aaa_ext", Policy::prm()}}) {
    auto res = saturate(load(name).clauses, pol, kBudget);
    if (res.kind != SaturationResult::Kind::Refuted) return false;
    if (!replay_refutation(res)) return false;
  }
  return true;
}

bool search_coherence() {
  Problem p = parse_problem("clause Q.\n");
  Sequent goal = parse_sequent("|- (Q \\/ ~Q)", p);
  auto proof = cutfree_search({}, goal, 4, {}, 1);
  return proof && !has_cut(*proof) && check_proof({}, goal, *proof).ok;
}

bool mutation_fuzz() {
  Problem p = load("example1");
  auto rules = p.rules();
  Sequent goal = parse_sequent("|- Q", p);
  ProofTree proof = parse_proof(
      "(cut (prop P) (prop Q) (prop ~Q)"
      " (trace (step pos= rule=2 sub={}))"
      " (trace (step pos= rule=1 sub={}))"
      " (axiom (prop Q) (trace) (trace))"
      " (neg-right 1 (prop Q) (trace)"
      "  (axiom (prop Q) (trace) (trace))))",
      p);
  if (!check_proof(rules, goal, proof).ok) return false;
  int rejected = 0;
  for (int k = 0; k < 50; ++k) {
    ProofTree bad = proof;
    RewriteTrace& tr = (k % 2 == 0) ? bad.trace1 : bad.trace2;
    switch ((k / 2) % 4) {
      case 0: tr.steps[0].rule_id = tr.steps[0].rule_id == 1 ? 2 : 1; break;
      case 1: tr.steps[0].position.push_back(0); break;
      case 2: tr.steps[0].rule_id = 99; break;
      case 3: tr.steps.push_back(tr.steps[0]); break;
    }
    if (!check_proof(rules, goal, bad).ok) rejected++;
  }
  return rejected == 50;
}

bool determinism() {
  for (const auto& [name, text] : corpus()) {
    Problem p1 = parse_problem(text, name);
    Problem p2 = parse_problem(text, name);
    MethodSpec spec;
    spec.method = "plain";
    if (run(p1, spec, 30).text != run(p2, spec, 30).text) return false;
  }
  return true;
}

bool criterion7() {
  bool ok = true;
  ok &= expect(mgu_laws(), "MGU laws");
  ok &= expect(ordering_stability(), "ordering substitution stability");
  ok &= expect(subset_laws(), "restriction-subset laws");
  ok &= expect(replay_soundness(), "refutation replay soundness");
  ok &= expect(search_coherence(), "checker/search coherence");
  ok &= expect(mutation_fuzz(), "trace-mutation rejection fuzz");
  ok &= expect(determinism(), "report determinism");
  return ok;
}

// --- criterion 8: example aaa extension -----------------------------------

bool criterion8() {
  Problem p = load("example_aaa_ext");
  auto res = saturate(p.clauses, Policy::prm(), kBudget);
  bool ok = expect(res.kind == SaturationResult::Kind::Refuted, "prm should refute");
  if (res.kind == SaturationResult::Kind::Refuted)
    ok &= expect(res.by_id(res.empty_clause_id).generation <= 3,
                 "refutation within three inference steps");
  return ok;
}

}  // namespace

int main() {
  report(1, "example1 outcome matrix (prm/sos/ordered/plain)", criterion1());
  report(2, "finite failure vs loop on P(f(X)) | -P(X)", criterion2());
  report(3, "rewrite-system translation golden test", criterion3());
  report(4, "cut witness accepted, no cut-free proof within bounds", criterion4());
  report(5, "immediate finite failure on the HOL theory", criterion5());
  report(6, "redundant refutations of the intro problem", criterion6());
  report(7, "property suites", criterion7());
  report(8, "extended aaa problem refuted in three steps", criterion8());

  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}

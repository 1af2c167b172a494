#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "polres/problem.hpp"
#include "polres/saturation.hpp"

using namespace polres;

namespace {

Problem load(const std::string& name) { return *load_corpus_problem(name); }

/// A precedence covering the problem's whole signature, names sorted.
Precedence full_precedence(const Problem& p) {
  std::vector<std::string> preds, fns;
  for (const auto& [name, arity] : p.predicate_arity) preds.push_back(name);
  for (const auto& [name, arity] : p.function_arity) fns.push_back(name);
  return Precedence::from_lists(preds, fns);
}

bool contains_variant(const std::vector<Clause>& cs, const Clause& c) {
  for (const auto& other : cs)
    if (is_variant(c, other)) return true;
  return false;
}

std::string clause_strings(const SaturationResult& res) {
  std::ostringstream out;
  for (const auto& c : res.clauses)
    out << c.id << " g" << c.generation << " " << to_string(c) << "\n";
  return out.str();
}

}  // namespace

TEST_CASE("plain resolution: {P} x {-P | Q} gives {Q}") {
  Problem p = load("intro");
  auto rs = resolvents(p.clauses[0], p.clauses[1], Policy::plain());
  REQUIRE(rs.size() == 1);
  CHECK(to_string(rs[0]) == "Q");
  CHECK(rs[0].provenance.kind == Provenance::Kind::Resolvent);
}

TEST_CASE("PRM blocks resolution on non-selected literals of one-way clauses") {
  Problem p = parse_problem(
      "theory P* | Q.\n"
      "clause -Q.\n"
      "clause -P.\n");
  // -Q resolves only against Q, which is not the selected literal
  CHECK(resolvents(p.clauses[0], p.clauses[1], Policy::prm()).empty());
  // -P resolves against the selected literal P; resolvent is ordinary
  auto rs = resolvents(p.clauses[0], p.clauses[2], Policy::prm());
  REQUIRE(rs.size() == 1);
  CHECK(to_string(rs[0]) == "Q");
  CHECK(rs[0].role == ClauseRole::Ordinary);
}

TEST_CASE("PRM forbids one-way x one-way resolution") {
  Problem p = load("example1");
  CHECK(resolvents(p.clauses[0], p.clauses[1], Policy::prm()).empty());
  CHECK_FALSE(resolvents(p.clauses[0], p.clauses[1], Policy::plain()).empty());
}

TEST_CASE("set of support forbids theory x theory inferences") {
  Problem p = load("example1");
  Policy sos = Policy::set_of_support({1, 2});
  CHECK(resolvents(p.clauses[0], p.clauses[1], sos).empty());
  // theory x goal clause is allowed
  CHECK_FALSE(resolvents(p.clauses[0], p.clauses[2], sos).empty());
}

TEST_CASE("factoring examples") {
  Problem p = parse_problem(
      "clause P(X) | P(a).\n"
      "clause Q | Q.\n"
      "theory R* | R.\n");
  auto f1 = factors(p.clauses[0], Policy::plain());
  REQUIRE(f1.size() == 1);
  CHECK(to_string(f1[0]) == "P(a)");

  auto f2 = factors(p.clauses[1], Policy::plain());
  REQUIRE(f2.size() == 1);
  CHECK(to_string(f2[0]) == "Q");

  // PRM never factors one-way clauses
  CHECK(factors(p.clauses[2], Policy::prm()).empty());
  CHECK_FALSE(factors(p.clauses[2], Policy::plain()).empty());
}

TEST_CASE("example1 outcome matrix") {
  Problem p = load("example1");

  auto plain = saturate(p.clauses, Policy::plain(), 50);
  CHECK(plain.kind == SaturationResult::Kind::Refuted);

  auto sos = saturate(p.clauses, Policy::set_of_support(p.theory_ids()), 50);
  CHECK(sos.kind == SaturationResult::Kind::Refuted);

  auto ordered = saturate(
      p.clauses, Policy::ordered_selection(full_precedence(p), SelectionFn::none()), 50);
  CHECK(ordered.kind == SaturationResult::Kind::Refuted);

  auto prm = saturate(p.clauses, Policy::prm(), 50);
  CHECK(prm.kind == SaturationResult::Kind::Saturated);
  CHECK(prm.empty_clause_id == -1);
}

TEST_CASE("ordered refutation of example1 goes through Q | Q, then Q, then bottom") {
  Problem p = load("example1");
  Precedence q_below_p = Precedence::from_lists({"Q", "P"}, {});
  auto res = saturate(
      p.clauses, Policy::ordered_selection(q_below_p, SelectionFn::none()), 50);
  REQUIRE(res.kind == SaturationResult::Kind::Refuted);
  REQUIRE(res.clauses.size() == 6);
  CHECK(to_string(res.by_id(4)) == "Q | Q");
  CHECK(res.by_id(4).generation == 1);
  CHECK(to_string(res.by_id(5)) == "Q");
  CHECK(res.by_id(5).provenance.kind == Provenance::Kind::Factor);
  CHECK(res.by_id(6).empty());
  CHECK(res.empty_clause_id == 6);
}

TEST_CASE("loop problem: PRM fails finitely, SOS exhausts the budget") {
  Problem p = load("loop");

  auto prm = saturate(p.clauses, Policy::prm(), 50);
  CHECK(prm.kind == SaturationResult::Kind::Saturated);
  CHECK(prm.generated == 0);

  auto sos = saturate(p.clauses, Policy::set_of_support(p.theory_ids()), 20);
  REQUIRE(sos.kind == SaturationResult::Kind::BudgetExhausted);
  // P(f^i(a)) appears at generation step i
  for (int i = 1; i <= 5; ++i) {
    std::string expect = "P(";
    for (int k = 0; k < i; ++k) expect += "f(";
    expect += "a";
    for (int k = 0; k < i + 1; ++k) expect += ")";
    bool found = false;
    for (const auto& c : sos.clauses)
      if (c.generation == i && to_string(c) == expect) found = true;
    CHECK(found);
  }
}

TEST_CASE("PRM saturates the HOL theory clauses immediately") {
  Problem p = load("example_bbb");
  auto res = saturate(p.clauses, Policy::prm(), 50);
  CHECK(res.kind == SaturationResult::Kind::Saturated);
  CHECK(res.generated == 0);
}

TEST_CASE("PRM refutes the extended aaa problem in three steps") {
  Problem p = load("example_aaa_ext");
  auto res = saturate(p.clauses, Policy::prm(), 50);
  REQUIRE(res.kind == SaturationResult::Kind::Refuted);
  CHECK(res.by_id(res.empty_clause_id).generation <= 3);
  CHECK(replay_refutation(res));
}

TEST_CASE("restriction policies only ever shrink the plain resolvent set") {
  for (const auto& [name, text] : corpus()) {
    Problem p = parse_problem(text, name);
    Policy plain = Policy::plain();
    std::vector<Policy> restricted = {
        Policy::set_of_support(p.theory_ids()),
        Policy::ordered_selection(full_precedence(p), SelectionFn::none()),
        Policy::ordered_selection(full_precedence(p), SelectionFn::all_negative()),
        Policy::prm(),
    };
    int rename_counter = 0;
    for (const auto& c1 : p.clauses) {
      for (const auto& c2 : p.clauses) {
        Clause r2 = rename_apart(c2, vars_of(c1), &rename_counter);
        r2.id = c2.id;
        auto base = resolvents(c1, r2, plain);
        for (const auto& pol : restricted)
          for (const auto& r : resolvents(c1, r2, pol)) CHECK(contains_variant(base, r));
        auto fbase = factors(c1, plain);
        for (const auto& pol : restricted)
          for (const auto& f : factors(c1, pol)) CHECK(contains_variant(fbase, f));
      }
    }
  }
}

TEST_CASE("SOS ancestry: every derived clause has a non-theory parent") {
  for (const std::string name : {"example1", "loop"}) {
    Problem p = load(name);
    auto theory = p.theory_ids();
    auto res = saturate(p.clauses, Policy::set_of_support(theory), 20);
    for (const auto& c : res.clauses) {
      if (c.provenance.kind != Provenance::Kind::Resolvent) continue;
      bool non_theory_parent = false;
      for (int parent : c.provenance.parents)
        if (!theory.count(parent) || res.by_id(parent).provenance.kind != Provenance::Kind::Input)
          non_theory_parent = true;
      CHECK(non_theory_parent);
    }
  }
}

TEST_CASE("PRM role law: derived clauses are ordinary, never two one-way parents") {
  for (const auto& [name, text] : corpus()) {
    Problem p = parse_problem(text, name);
    auto res = saturate(p.clauses, Policy::prm(), 30);
    for (const auto& c : res.clauses) {
      if (c.provenance.kind == Provenance::Kind::Input) continue;
      CHECK(c.role == ClauseRole::Ordinary);
      int one_way_parents = 0;
      for (int parent : c.provenance.parents)
        if (res.by_id(parent).one_way()) one_way_parents++;
      CHECK(one_way_parents <= 1);
    }
  }
}

TEST_CASE("refutation replay is literal-exact for every refuted corpus run") {
  struct Run {
    std::string name;
    Policy pol;
  };
  std::vector<Run> runs = {
      {"intro", Policy::plain()},
      {"example1", Policy::plain()},
      {"example1", Policy::set_of_support({1, 2})},
      {"example_aaa_ext", Policy::prm()},
  };
  Problem e1 = load("example1");
  runs.push_back({"example1",
                  Policy::ordered_selection(full_precedence(e1), SelectionFn::none())});
  for (const auto& run : runs) {
    Problem p = load(run.name);
    auto res = saturate(p.clauses, run.pol, 50);
    REQUIRE(res.kind == SaturationResult::Kind::Refuted);
    CHECK(replay_refutation(res));
    // every id in the derivation DAG exists and parents precede children
    for (int id : derivation_ids(res, res.empty_clause_id))
      for (int parent : res.by_id(id).provenance.parents) CHECK(parent < id);
  }
}

TEST_CASE("tampered provenance is rejected by replay") {
  Problem p = load("intro");
  auto res = saturate(p.clauses, Policy::plain(), 50);
  REQUIRE(res.kind == SaturationResult::Kind::Refuted);
  Clause bad = res.by_id(res.empty_clause_id);
  REQUIRE(bad.provenance.kind == Provenance::Kind::Resolvent);
  bad.provenance.positions[0] = 99;
  CHECK_FALSE(replay_clause(res, bad));

  Clause wrong_lits = res.by_id(res.empty_clause_id);
  wrong_lits.literals.push_back(p.clauses[0].literals[0]);
  CHECK_FALSE(replay_clause(res, wrong_lits));
}

TEST_CASE("two identical runs produce identical clause tables") {
  for (const auto& [name, text] : corpus()) {
    Problem p1 = parse_problem(text, name);
    Problem p2 = parse_problem(text, name);
    auto r1 = saturate(p1.clauses, Policy::plain(), 30);
    auto r2 = saturate(p2.clauses, Policy::plain(), 30);
    CHECK(r1.generated == r2.generated);
    CHECK(r1.kept == r2.kept);
    CHECK(clause_strings(r1) == clause_strings(r2));
  }
}

TEST_CASE("a Saturated verdict is genuine: the post-hoc pass finds nothing new") {
  struct Run {
    std::string name;
    Policy pol;
  };
  std::vector<Run> runs = {{"example1", Policy::prm()},
                           {"loop", Policy::prm()},
                           {"example_bbb", Policy::prm()},
                           {"example_aaa", Policy::prm()}};
  for (const auto& run : runs) {
    Problem p = load(run.name);
    auto res = saturate(p.clauses, run.pol, 50);
    REQUIRE(res.kind == SaturationResult::Kind::Saturated);
    int rename_counter = 1000;
    for (int a : res.active_ids) {
      Clause ca = res.by_id(a);
      for (const auto& f : factors(ca, run.pol)) CHECK(contains_variant(res.clauses, f));
      for (int b : res.active_ids) {
        Clause cb = rename_apart(res.by_id(b), vars_of(ca), &rename_counter);
        cb.id = b;
        for (const auto& r : resolvents(ca, cb, run.pol))
          CHECK(contains_variant(res.clauses, r));
      }
    }
  }
}

TEST_CASE("subsumption flag prunes subsumed clauses when enabled") {
  Problem p = parse_problem(
      "clause P(X).\n"
      "clause -P(a) | Q.\n"
      "clause -Q | Q.\n");
  SaturationOptions opts;
  opts.subsumption = true;
  auto with = saturate(p.clauses, Policy::plain(), 30, opts);
  auto without = saturate(p.clauses, Policy::plain(), 30);
  CHECK(with.kept <= without.kept);
  CHECK(subsumes(p.clauses[0], parse_problem("clause P(a) | R.").clauses[0]));
  CHECK_FALSE(subsumes(parse_problem("clause P(a) | R.").clauses[0], p.clauses[0]));
}

TEST_CASE("enumerate_refutations finds both redundant derivations of the intro problem") {
  Problem p = load("intro");
  auto refs = enumerate_refutations(p.clauses, 10);
  REQUIRE(refs.size() >= 2);

  Literal q{true, Atom{Symbol{"Q", 0, SymbolKind::Predicate}, {}}};
  Literal not_p{false, Atom{Symbol{"P", 0, SymbolKind::Predicate}, {}}};
  bool via_q = false, via_not_p = false;
  std::set<std::string> sigs;
  for (const auto& r : refs) {
    CHECK(sigs.insert(r.signature).second);  // all DAGs distinct
    REQUIRE_FALSE(r.nodes.empty());
    CHECK(r.nodes.back().clause.empty());
    if (r.contains_unit(q) && !r.contains_unit(not_p)) via_q = true;
    if (r.contains_unit(not_p) && !r.contains_unit(q)) via_not_p = true;
  }
  CHECK(via_q);
  CHECK(via_not_p);
}

TEST_CASE("enumerate_refutations degenerate cases") {
  Problem two = parse_problem("clause P.\nclause -P.\n");
  CHECK(enumerate_refutations(two.clauses, 10).size() == 1);

  Problem sat = parse_problem("clause P.\n");
  CHECK(enumerate_refutations(sat.clauses, 10).empty());
}

TEST_CASE("budget bound is respected") {
  Problem p = load("loop");
  auto res = saturate(p.clauses, Policy::set_of_support(p.theory_ids()), 7);
  CHECK(res.kind == SaturationResult::Kind::BudgetExhausted);
  CHECK(res.generated == 8);  // stops as soon as the budget is crossed
}

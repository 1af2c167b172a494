// Command-line workbench: run restriction policies over clause sets,
// print rewrite-system translations, check proof objects, and search
// for bounded cut-free proofs.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polres/polres.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

/// A problem argument is a built-in corpus name or a file path.
polres::Problem load_problem(const std::string& arg) {
  if (auto p = polres::load_corpus_problem(arg)) return *p;
  return polres::parse_problem(read_file(arg), arg);
}

std::optional<std::set<int>> parse_theory_ids(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::set<int> ids;
  std::string num;
  for (char c : text + ",") {
    if (c == ',') {
      if (!num.empty()) ids.insert(std::stoi(num));
      num.clear();
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      num += c;
    } else {
      throw polres::ConfigError("bad character in --theory list");
    }
  }
  return ids;
}

polres::MethodSpec make_spec(const std::string& method, const std::string& precedence,
                             const std::string& selection, const std::string& theory) {
  polres::MethodSpec spec;
  spec.method = method;
  spec.precedence = precedence;
  if (selection.rfind("table=", 0) == 0)
    spec.selection = "table=" + read_file(selection.substr(6));
  else
    spec.selection = selection;
  spec.theory_override = parse_theory_ids(theory);
  return spec;
}

/// Ground terms over the named function symbols, up to `depth`.
std::vector<polres::Term> term_universe(const polres::Problem& problem,
                                        const std::string& symbols, int depth) {
  using polres::Term;
  std::vector<polres::Symbol> fns;
  std::string name;
  for (char c : symbols + ",") {
    if (c == ',') {
      if (!name.empty()) {
        auto it = problem.function_arity.find(name);
        if (it == problem.function_arity.end())
          throw polres::ConfigError("--terms symbol '" + name + "' not in the signature");
        fns.push_back(polres::Symbol{name, it->second, polres::SymbolKind::Function});
        name.clear();
      }
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      name += c;
    }
  }
  std::vector<Term> universe;
  for (const auto& f : fns)
    if (f.arity == 0) universe.push_back(Term::app(f));
  for (int d = 0; d < depth; ++d) {
    std::vector<Term> next = universe;
    for (const auto& f : fns) {
      if (f.arity == 0) continue;
      // All argument tuples from the current universe.
      std::vector<std::vector<Term>> tuples{{}};
      for (int i = 0; i < f.arity; ++i) {
        std::vector<std::vector<Term>> grown;
        for (const auto& t : tuples)
          for (const auto& u : universe) {
            auto t2 = t;
            t2.push_back(u);
            grown.push_back(std::move(t2));
          }
        tuples = std::move(grown);
      }
      for (auto& t : tuples) {
        Term candidate = Term::app(f, t);
        bool present = false;
        for (const auto& e : next)
          if (e == candidate) present = true;
        if (!present) next.push_back(std::move(candidate));
      }
    }
    universe = std::move(next);
  }
  return universe;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polres: a first-order resolution workbench"};
  app.require_subcommand(1);

  std::string problem_arg, method = "plain", precedence, selection = "none", theory;
  std::string goal_text, proof_path, terms = "";
  std::vector<std::string> methods;
  int budget = 1000, depth = 8, fuel = 3, term_depth = 2;
  bool subsumption = false;

  auto* prove = app.add_subcommand("prove", "saturate a problem under one policy");
  prove->add_option("problem", problem_arg)->required();
  prove->add_option("--method", method, "plain|sos|ordered|prm");
  prove->add_option("--budget", budget);
  prove->add_option("--precedence", precedence, "ranked list, e.g. \"Q<P\"");
  prove->add_option("--selection", selection, "none|all-neg|table=FILE");
  prove->add_option("--theory", theory, "clause ids, e.g. \"1,2\"");
  prove->add_flag("--subsumption", subsumption);

  auto* cmp = app.add_subcommand("compare", "run several policies side by side");
  cmp->add_option("problem", problem_arg)->required();
  cmp->add_option("--method", methods, "repeatable")->required();
  cmp->add_option("--budget", budget);
  cmp->add_option("--precedence", precedence);
  cmp->add_option("--selection", selection);
  cmp->add_option("--theory", theory);

  auto* rules = app.add_subcommand("rules", "print the polarized rewrite system");
  rules->add_option("problem", problem_arg)->required();

  auto* check = app.add_subcommand("check-proof", "verify a proof object");
  check->add_option("problem", problem_arg)->required();
  check->add_option("proof", proof_path)->required();
  check->add_option("--goal", goal_text)->required();

  auto* cutfree = app.add_subcommand("cutfree", "bounded cut-free proof search");
  cutfree->add_option("problem", problem_arg)->required();
  cutfree->add_option("--goal", goal_text)->required();
  cutfree->add_option("--depth", depth);
  cutfree->add_option("--fuel", fuel);
  cutfree->add_option("--terms", terms, "function symbols for forall-left, e.g. \"a,f\"");
  cutfree->add_option("--term-depth", term_depth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    polres::Problem problem = load_problem(problem_arg);

    if (prove->parsed()) {
      auto spec = make_spec(method, precedence, selection, theory);
      polres::SaturationOptions opts;
      opts.subsumption = subsumption;
      auto report = polres::run(problem, spec, budget, opts);
      std::cout << report.text;
      return polres::outcome_exit_code(report.result.kind);
    }

    if (cmp->parsed()) {
      std::vector<polres::MethodSpec> specs;
      for (const auto& m : methods) specs.push_back(make_spec(m, precedence, selection, theory));
      auto table = polres::compare(problem, specs, budget);
      std::cout << table.text;
      return 0;
    }

    if (rules->parsed()) {
      std::cout << polres::emit_rules(problem);
      return 0;
    }

    if (check->parsed()) {
      auto goal = polres::parse_sequent(goal_text, problem);
      auto proof = polres::parse_proof(read_file(proof_path), problem);
      auto system = problem.rules();
      auto result = polres::check_proof(system, goal, proof);
      if (result.ok) {
        std::cout << "CHECK: OK cut=" << (polres::has_cut(proof) ? "yes" : "no") << "\n";
        return 0;
      }
      std::cout << "CHECK: REJECTED at [" << result.path << "]: " << result.reason << "\n";
      return 1;
    }

    if (cutfree->parsed()) {
      auto goal = polres::parse_sequent(goal_text, problem);
      auto system = problem.rules();
      auto universe = term_universe(problem, terms, term_depth);
      auto proof = polres::cutfree_search(system, goal, depth, universe, fuel);
      if (proof) {
        std::cout << "CUTFREE: FOUND depth<=" << depth << "\n" << to_string(*proof) << "\n";
        return 0;
      }
      std::cout << "CUTFREE: NONE within depth=" << depth << " fuel=" << fuel << "\n";
      return 1;
    }
  } catch (const polres::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const polres::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}

#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "polres/problem.hpp"
#include "polres/saturation.hpp"

namespace polres {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Method choice as given on the command line, resolved against a
/// problem into a Policy by make_policy.
struct MethodSpec {
  std::string method = "plain";  // plain | sos | ordered | prm
  std::string precedence;        // "Q<P", ranked low to high
  std::string selection = "none";  // none | all-neg | table=<inline text>
  std::optional<std::set<int>> theory_override;
};

inline Precedence parse_precedence(const Problem& problem, const std::string& text) {
  std::vector<std::string> names;
  std::string cur;
  for (char c : text + "<") {
    if (c == '<') {
      if (cur.empty()) throw ConfigError("empty name in precedence string");
      names.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  Precedence p;
  for (size_t i = 0; i < names.size(); ++i) {
    bool known = false;
    if (problem.predicate_arity.count(names[i])) {
      p.predicate_rank[names[i]] = static_cast<int>(i);
      known = true;
    }
    if (problem.function_arity.count(names[i])) {
      p.function_rank[names[i]] = static_cast<int>(i);
      known = true;
    }
    if (!known) throw ConfigError("precedence symbol '" + names[i] + "' not in the signature");
  }
  for (const auto& [name, arity] : problem.predicate_arity) {
    (void)arity;
    if (!p.predicate_rank.count(name))
      throw ConfigError("precedence does not cover predicate '" + name + "'");
  }
  for (const auto& [name, arity] : problem.function_arity) {
    (void)arity;
    if (!p.function_rank.count(name))
      throw ConfigError("precedence does not cover function '" + name + "'");
  }
  return p;
}

/// Selection table text: one "clause-id: pos,pos" line per clause.
inline SelectionFn parse_selection_table(const std::string& text) {
  std::map<int, std::set<size_t>> table;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ConfigError("selection table line lacks ':'");
    int id = std::stoi(line.substr(0, colon));
    std::string rest = line.substr(colon + 1);
    std::set<size_t> positions;
    std::string num;
    for (char c : rest + ",") {
      if (c == ',') {
        if (!num.empty()) positions.insert(static_cast<size_t>(std::stoul(num)));
        num.clear();
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        num += c;
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        throw ConfigError("bad character in selection table");
      }
    }
    table[id] = std::move(positions);
  }
  return SelectionFn::explicit_table(std::move(table));
}

inline Policy make_policy(const Problem& problem, const MethodSpec& spec) {
  if (spec.method == "plain") return Policy::plain();
  if (spec.method == "prm") {
    for (const auto& c : problem.clauses)
      if (c.one_way() && c.selected >= c.literals.size())
        throw ConfigError("one-way clause without a valid selected literal");
    return Policy::prm();
  }
  if (spec.method == "sos") {
    std::set<int> theory = spec.theory_override.value_or(problem.theory_ids());
    for (int id : theory)
      if (id < 1 || id > static_cast<int>(problem.clauses.size()))
        throw ConfigError("theory id " + std::to_string(id) + " out of range");
    if (theory.empty()) throw ConfigError("set-of-support needs a non-empty theory");
    return Policy::set_of_support(std::move(theory));
  }
  if (spec.method == "ordered") {
    if (spec.precedence.empty()) throw ConfigError("ordered resolution needs --precedence");
    Precedence prec = parse_precedence(problem, spec.precedence);
    SelectionFn sel;
    if (spec.selection == "none")
      sel = SelectionFn::none();
    else if (spec.selection == "all-neg")
      sel = SelectionFn::all_negative();
    else if (spec.selection.rfind("table=", 0) == 0)
      sel = parse_selection_table(spec.selection.substr(6));
    else
      throw ConfigError("unknown selection strategy '" + spec.selection + "'");
    return Policy::ordered_selection(std::move(prec), std::move(sel));
  }
  throw ConfigError("unknown method '" + spec.method + "'");
}

struct RunReport {
  std::string method;
  SaturationResult result;
  std::string text;          // human trace, machine line last
  std::string machine_line;  // exactly one per run
  double wall_seconds = 0.0;
};

inline std::string outcome_word(SaturationResult::Kind k) {
  switch (k) {
    case SaturationResult::Kind::Refuted: return "REFUTED";
    case SaturationResult::Kind::Saturated: return "SATURATED";
    case SaturationResult::Kind::BudgetExhausted: return "BUDGET";
  }
  return "?";
}

/// Exit codes: 0 refuted, 1 saturated, 2 budget, 3 usage/parse error.
inline int outcome_exit_code(SaturationResult::Kind k) {
  switch (k) {
    case SaturationResult::Kind::Refuted: return 0;
    case SaturationResult::Kind::Saturated: return 1;
    case SaturationResult::Kind::BudgetExhausted: return 2;
  }
  return 3;
}

inline std::string clause_trace_line(const Clause& c) {
  std::ostringstream out;
  if (c.provenance.kind == Provenance::Kind::Input) {
    out << "id=" << c.id << " [input] " << to_string(c);
  } else {
    out << "gen=" << c.generation << " id=" << c.id;
    const auto& pv = c.provenance;
    if (pv.kind == Provenance::Kind::Resolvent)
      out << " [res " << pv.parents[0] << "@" << pv.positions[0] << " x " << pv.parents[1] << "@"
          << pv.positions[1] << "]";
    else
      out << " [factor " << pv.parents[0] << "@" << pv.positions[0] << "," << pv.positions[1]
          << "]";
    Substitution s;
    s.map = pv.subst;
    out << " " << to_string(c) << "  sub=";
    out << "{";
    bool first = true;
    for (const auto& [v, t] : s.map) {
      if (!first) out << ",";
      first = false;
      out << var_name(v) << ":=" << to_string(t);
    }
    out << "}";
  }
  return out.str();
}

inline RunReport run(const Problem& problem, const MethodSpec& spec, int budget,
                     const SaturationOptions& opts = {}) {
  Policy pol = make_policy(problem, spec);
  auto start = std::chrono::steady_clock::now();
  SaturationResult res = saturate(problem.clauses, pol, budget, opts);
  auto stop = std::chrono::steady_clock::now();

  RunReport rep;
  rep.method = pol.name();
  rep.wall_seconds = std::chrono::duration<double>(stop - start).count();

  std::ostringstream out;
  out << "# problem: " << (problem.name.empty() ? "<file>" : problem.name) << "\n";
  out << "# method: " << pol.name() << " budget=" << budget << "\n";
  for (const auto& c : res.clauses) out << clause_trace_line(c) << "\n";
  rep.machine_line = "OUTCOME: " + outcome_word(res.kind) +
                     " generated=" + std::to_string(res.generated) +
                     " kept=" + std::to_string(res.kept);
  out << rep.machine_line << "\n";
  rep.text = out.str();
  rep.result = std::move(res);
  return rep;
}

struct CompareTable {
  std::vector<RunReport> rows;
  std::string text;
};

inline CompareTable compare(const Problem& problem, const std::vector<MethodSpec>& methods,
                            int budget, const SaturationOptions& opts = {}) {
  CompareTable table;
  for (const auto& m : methods) table.rows.push_back(run(problem, m, budget, opts));

  std::ostringstream out;
  out << "# problem: " << (problem.name.empty() ? "<file>" : problem.name) << "\n";
  size_t width = 8;
  for (const auto& r : table.rows) width = std::max(width, r.method.size() + 2);
  out << "method";
  for (size_t i = 6; i < width; ++i) out << ' ';
  out << "outcome    generated  kept\n";
  for (const auto& r : table.rows) {
    std::string word = outcome_word(r.result.kind);
    out << r.method;
    for (size_t i = r.method.size(); i < width; ++i) out << ' ';
    out << word;
    for (size_t i = word.size(); i < 11; ++i) out << ' ';
    std::string g = std::to_string(r.result.generated);
    out << g;
    for (size_t i = g.size(); i < 11; ++i) out << ' ';
    out << r.result.kept << "\n";
  }
  for (const auto& r : table.rows) out << r.machine_line << " method=" << r.method << "\n";
  table.text = out.str();
  return table;
}

/// The rewrite system of a problem in rule syntax, plus the verdict of
/// the lhs-disjointness cut-elimination criterion.
inline std::string emit_rules(const Problem& problem) {
  auto rules = problem.rules();
  if (rules.empty()) throw ConfigError("problem has no theory clauses or rules");
  std::string out;
  for (const auto& r : rules) out += to_string(r) + ".\n";
  out += std::string("criterion: ") + (check_disjoint_criterion(rules) ? "PASSES" : "FAILS") +
         "\n";
  return out;
}

}  // namespace polres

#pragma once

#include <string>
#include <vector>

#include "polres/problem.hpp"
#include "polres/sequent.hpp"

namespace polres {

namespace detail {

inline std::string ident_dash(Cursor& cur) {
  std::string s = cur.ident();
  while (cur.peek_raw() == '-') {
    cur.try_consume('-');
    s += "-" + cur.ident();
  }
  return s;
}

inline size_t parse_uint(Cursor& cur) {
  std::string s = cur.ident();
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) cur.error("expected a number, got " + s);
  return static_cast<size_t>(std::stoul(s));
}

inline PropPath parse_path(Cursor& cur) {
  PropPath path;
  while (std::isdigit(static_cast<unsigned char>(cur.peek_raw()))) {
    std::string d(1, cur.peek_raw());
    cur.try_consume(cur.peek_raw());
    path.push_back(std::stoi(d));
    if (cur.peek_raw() == '.') cur.try_consume('.');
  }
  return path;
}

inline RewriteTrace parse_trace(Cursor& cur, ParseContext& ctx) {
  // leading '(' and the 'trace' keyword are already consumed
  RewriteTrace tr;
  while (cur.try_consume('(')) {
    std::string kw = cur.ident();
    if (kw != "step") cur.error("expected 'step' in trace, got '" + kw + "'");
    RewriteStep step;
    if (!cur.try_consume("pos=")) cur.error("expected 'pos=' in step");
    step.position = parse_path(cur);
    if (!cur.try_consume("rule=")) cur.error("expected 'rule=' in step");
    step.rule_id = static_cast<int>(parse_uint(cur));
    if (!cur.try_consume("sub={")) cur.error("expected 'sub={' in step");
    if (!cur.try_consume('}')) {
      do {
        std::string vn = cur.ident();
        if (!is_variable_name(vn)) cur.error("substitution binds a non-variable '" + vn + "'");
        if (!cur.try_consume(":=")) cur.error("expected ':=' in substitution");
        step.matcher.bind(ctx.var(vn), parse_term(cur, ctx));
      } while (cur.try_consume(','));
      cur.expect('}', "at end of substitution");
    }
    cur.expect(')', "at end of step");
    tr.steps.push_back(std::move(step));
  }
  cur.expect(')', "at end of trace");
  return tr;
}

inline RewriteTrace expect_trace(Cursor& cur, ParseContext& ctx) {
  cur.expect('(', "before trace");
  std::string kw = cur.ident();
  if (kw != "trace") cur.error("expected 'trace', got '" + kw + "'");
  return parse_trace(cur, ctx);
}

inline Prop expect_prop(Cursor& cur, ParseContext& ctx) {
  cur.expect('(', "before prop");
  std::string kw = cur.ident();
  if (kw != "prop") cur.error("expected 'prop', got '" + kw + "'");
  Prop p = parse_prop(cur, ctx);
  cur.expect(')', "at end of prop");
  return p;
}

inline ProofTree parse_proof_node(Cursor& cur, ParseContext& ctx) {
  cur.expect('(', "at start of proof node");
  std::string name = ident_dash(cur);
  auto tag = rule_from_name(name);
  if (!tag) cur.error("unknown proof rule '" + name + "'");

  ProofTree t;
  t.rule = *tag;
  auto children = [&](size_t n) {
    for (size_t i = 0; i < n; ++i) t.children.push_back(parse_proof_node(cur, ctx));
  };

  switch (*tag) {
    case RuleTag::Axiom:
      t.p = expect_prop(cur, ctx);
      t.trace1 = expect_trace(cur, ctx);
      t.trace2 = expect_trace(cur, ctx);
      break;
    case RuleTag::Cut:
      t.p = expect_prop(cur, ctx);
      t.q = expect_prop(cur, ctx);
      t.r = expect_prop(cur, ctx);
      t.trace1 = expect_trace(cur, ctx);
      t.trace2 = expect_trace(cur, ctx);
      children(2);
      break;
    case RuleTag::ContrLeft:
    case RuleTag::ContrRight:
      t.index = parse_uint(cur);
      t.q = expect_prop(cur, ctx);
      t.r = expect_prop(cur, ctx);
      t.trace1 = expect_trace(cur, ctx);
      t.trace2 = expect_trace(cur, ctx);
      children(1);
      break;
    case RuleTag::WeakLeft:
    case RuleTag::WeakRight:
      t.index = parse_uint(cur);
      children(1);
      break;
    case RuleTag::BotLeft:
      t.index = parse_uint(cur);
      t.trace1 = expect_trace(cur, ctx);
      break;
    case RuleTag::NegLeft:
    case RuleTag::NegRight:
      t.index = parse_uint(cur);
      t.q = expect_prop(cur, ctx);
      t.trace1 = expect_trace(cur, ctx);
      children(1);
      break;
    case RuleTag::OrLeft:
    case RuleTag::OrRight:
      t.index = parse_uint(cur);
      t.q = expect_prop(cur, ctx);
      t.r = expect_prop(cur, ctx);
      t.trace1 = expect_trace(cur, ctx);
      children(t.rule == RuleTag::OrLeft ? 2 : 1);
      break;
    case RuleTag::ForallLeft: {
      t.index = parse_uint(cur);
      cur.expect('(', "before var");
      if (cur.ident() != "var") cur.error("expected 'var'");
      t.var = ctx.var(cur.ident());
      cur.expect(')', "after var");
      t.q = expect_prop(cur, ctx);
      cur.expect('(', "before term");
      if (cur.ident() != "term") cur.error("expected 'term'");
      t.term = parse_term(cur, ctx);
      cur.expect(')', "after term");
      t.trace1 = expect_trace(cur, ctx);
      t.r = expect_prop(cur, ctx);
      t.trace2 = expect_trace(cur, ctx);
      children(1);
      break;
    }
    case RuleTag::ForallRight: {
      t.index = parse_uint(cur);
      cur.expect('(', "before var");
      if (cur.ident() != "var") cur.error("expected 'var'");
      t.var = ctx.var(cur.ident());
      cur.expect(')', "after var");
      t.q = expect_prop(cur, ctx);
      t.trace1 = expect_trace(cur, ctx);
      children(1);
      break;
    }
  }
  cur.expect(')', "at end of proof node");
  return t;
}

}  // namespace detail

/// Parse a proof file against an existing problem context (so variable
/// and symbol names agree with the problem and goal).
inline ProofTree parse_proof(const std::string& text, Problem& problem) {
  detail::ParseContext ctx{&problem};
  detail::Cursor cur(text);
  ProofTree t = detail::parse_proof_node(cur, ctx);
  if (!cur.eof()) cur.error("trailing input after proof");
  return t;
}

/// Parse "p1, p2 |- q1, q2" (either side may be empty).
inline Sequent parse_sequent(const std::string& text, Problem& problem) {
  detail::ParseContext ctx{&problem};
  detail::Cursor cur(text);
  Sequent s;
  if (!cur.try_consume("|-")) {
    s.gamma.push_back(detail::parse_prop(cur, ctx));
    while (cur.try_consume(',')) s.gamma.push_back(detail::parse_prop(cur, ctx));
    if (!cur.try_consume("|-")) cur.error("expected '|-'");
  }
  if (!cur.eof()) {
    s.delta.push_back(detail::parse_prop(cur, ctx));
    while (cur.try_consume(',')) s.delta.push_back(detail::parse_prop(cur, ctx));
  }
  if (!cur.eof()) cur.error("trailing input after sequent");
  return s;
}

// ---- printing ----

inline std::string to_string(const PropPath& path) {
  std::string s;
  for (size_t i = 0; i < path.size(); ++i) {
    if (i) s += ".";
    s += std::to_string(path[i]);
  }
  return s;
}

inline std::string to_string(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : s.map) {
    if (!first) out += ",";
    first = false;
    out += var_name(v) + ":=" + to_string(t);
  }
  return out + "}";
}

inline std::string to_string(const RewriteTrace& tr) {
  std::string out = "(trace";
  for (const auto& st : tr.steps)
    out += " (step pos=" + to_string(st.position) + " rule=" + std::to_string(st.rule_id) +
           " sub=" + to_string(st.matcher) + ")";
  return out + ")";
}

inline std::string to_string(const ProofTree& t) {
  std::string out = "(" + std::string(rule_name(t.rule));
  auto prop = [](const Prop& p) { return " (prop " + to_string(p) + ")"; };
  switch (t.rule) {
    case RuleTag::Axiom:
      out += prop(t.p) + " " + to_string(t.trace1) + " " + to_string(t.trace2);
      break;
    case RuleTag::Cut:
      out += prop(t.p) + prop(t.q) + prop(t.r) + " " + to_string(t.trace1) + " " +
             to_string(t.trace2);
      break;
    case RuleTag::ContrLeft:
    case RuleTag::ContrRight:
      out += " " + std::to_string(t.index) + prop(t.q) + prop(t.r) + " " +
             to_string(t.trace1) + " " + to_string(t.trace2);
      break;
    case RuleTag::WeakLeft:
    case RuleTag::WeakRight:
      out += " " + std::to_string(t.index);
      break;
    case RuleTag::BotLeft:
      out += " " + std::to_string(t.index) + " " + to_string(t.trace1);
      break;
    case RuleTag::NegLeft:
    case RuleTag::NegRight:
      out += " " + std::to_string(t.index) + prop(t.q) + " " + to_string(t.trace1);
      break;
    case RuleTag::OrLeft:
    case RuleTag::OrRight:
      out += " " + std::to_string(t.index) + prop(t.q) + prop(t.r) + " " + to_string(t.trace1);
      break;
    case RuleTag::ForallLeft:
      out += " " + std::to_string(t.index) + " (var " + var_name(t.var) + ")" + prop(t.q) +
             " (term " + to_string(t.term) + ") " + to_string(t.trace1) + prop(t.r) + " " +
             to_string(t.trace2);
      break;
    case RuleTag::ForallRight:
      out += " " + std::to_string(t.index) + " (var " + var_name(t.var) + ")" + prop(t.q) +
             " " + to_string(t.trace1);
      break;
  }
  for (const auto& c : t.children) out += " " + to_string(c);
  return out + ")";
}

}  // namespace polres

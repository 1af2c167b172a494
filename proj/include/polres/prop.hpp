#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "polres/subst.hpp"
#include "polres/term.hpp"

namespace polres {

/// Formula over {atom, false, ~, \/, forall} — the connectives of the
/// polarized sequent calculus. Immutable; copies share nodes.
class Prop {
 public:
  enum class Kind { Atomic, Falsum, Neg, Or, Forall };

  struct Node {
    Kind kind;
    Atom atom;       // Atomic
    VarId var = -1;  // Forall
    std::shared_ptr<const Node> left, right;
  };

  Prop() : node_(falsum().node_) {}

  static Prop atomic(Atom a) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Atomic;
    n->atom = std::move(a);
    return Prop(std::move(n));
  }
  static Prop falsum() {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Falsum;
    return Prop(std::move(n));
  }
  static Prop neg(Prop p) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Neg;
    n->left = p.node_;
    return Prop(std::move(n));
  }
  static Prop disj(Prop a, Prop b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Or;
    n->left = a.node_;
    n->right = b.node_;
    return Prop(std::move(n));
  }
  static Prop forall(VarId v, Prop body) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Forall;
    n->var = v;
    n->left = body.node_;
    return Prop(std::move(n));
  }

  Kind kind() const { return node_->kind; }
  const Atom& atom() const { return node_->atom; }
  VarId bound_var() const { return node_->var; }
  Prop child() const { return Prop(node_->left); }        // Neg/Forall body, Or left
  Prop left() const { return Prop(node_->left); }
  Prop right() const { return Prop(node_->right); }

  bool is_atomic() const { return kind() == Kind::Atomic; }

 private:
  explicit Prop(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Path into a proposition tree: 0 descends into Neg/Forall bodies and
/// Or-left, 1 into Or-right.
using PropPath = std::vector<int>;

inline void collect_free_vars(const Prop& p, std::set<VarId>& bound, std::set<VarId>& out) {
  switch (p.kind()) {
    case Prop::Kind::Atomic: {
      for (VarId v : vars_of(p.atom()))
        if (!bound.count(v)) out.insert(v);
      return;
    }
    case Prop::Kind::Falsum:
      return;
    case Prop::Kind::Neg:
      collect_free_vars(p.child(), bound, out);
      return;
    case Prop::Kind::Or:
      collect_free_vars(p.left(), bound, out);
      collect_free_vars(p.right(), bound, out);
      return;
    case Prop::Kind::Forall: {
      bool was_bound = bound.count(p.bound_var()) > 0;
      bound.insert(p.bound_var());
      collect_free_vars(p.child(), bound, out);
      if (!was_bound) bound.erase(p.bound_var());
      return;
    }
  }
}

inline std::set<VarId> free_vars(const Prop& p) {
  std::set<VarId> bound, out;
  collect_free_vars(p, bound, out);
  return out;
}

/// Capture-avoiding substitution. Bound variables that collide with the
/// substitution's domain or range are renamed on the way down.
inline Prop apply(const Substitution& s, const Prop& p) {
  switch (p.kind()) {
    case Prop::Kind::Atomic:
      return Prop::atomic(apply(s, p.atom()));
    case Prop::Kind::Falsum:
      return p;
    case Prop::Kind::Neg:
      return Prop::neg(apply(s, p.child()));
    case Prop::Kind::Or:
      return Prop::disj(apply(s, p.left()), apply(s, p.right()));
    case Prop::Kind::Forall: {
      VarId v = p.bound_var();
      Substitution inner = s;
      inner.map.erase(v);
      bool clash = false;
      for (const auto& [dom, rng] : inner.map) {
        (void)dom;
        if (occurs_in(v, rng)) {
          clash = true;
          break;
        }
      }
      if (clash) {
        VarId v2 = fresh_var(var_name(v) + "'");
        Substitution ren;
        ren.bind(v, Term::variable(v2));
        return Prop::forall(v2, apply(inner, apply(ren, p.child())));
      }
      return Prop::forall(v, apply(inner, p.child()));
    }
  }
  return p;
}

namespace detail {

inline bool alpha_equal(const Prop& a, const Prop& b, std::map<VarId, VarId>& fwd,
                        std::map<VarId, VarId>& bwd) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Prop::Kind::Atomic: {
      if (a.atom().pred != b.atom().pred) return false;
      // Compare argument terms through the bound-variable correspondence.
      struct Cmp {
        const std::map<VarId, VarId>& fwd;
        bool eq(const Term& x, const Term& y) const {
          if (x.is_var() != y.is_var()) return false;
          if (x.is_var()) {
            auto it = fwd.find(x.var);
            if (it != fwd.end()) return it->second == y.var;
            return x.var == y.var;
          }
          if (x.fn != y.fn) return false;
          for (size_t i = 0; i < x.args.size(); ++i)
            if (!eq(x.args[i], y.args[i])) return false;
          return true;
        }
      } cmp{fwd};
      for (size_t i = 0; i < a.atom().args.size(); ++i)
        if (!cmp.eq(a.atom().args[i], b.atom().args[i])) return false;
      return true;
    }
    case Prop::Kind::Falsum:
      return true;
    case Prop::Kind::Neg:
      return alpha_equal(a.child(), b.child(), fwd, bwd);
    case Prop::Kind::Or:
      return alpha_equal(a.left(), b.left(), fwd, bwd) &&
             alpha_equal(a.right(), b.right(), fwd, bwd);
    case Prop::Kind::Forall: {
      auto fwd2 = fwd;
      auto bwd2 = bwd;
      fwd2[a.bound_var()] = b.bound_var();
      bwd2[b.bound_var()] = a.bound_var();
      return alpha_equal(a.child(), b.child(), fwd2, bwd2);
    }
  }
  return false;
}

}  // namespace detail

inline bool alpha_equal(const Prop& a, const Prop& b) {
  std::map<VarId, VarId> fwd, bwd;
  return detail::alpha_equal(a, b, fwd, bwd);
}

inline bool operator==(const Prop& a, const Prop& b) { return alpha_equal(a, b); }
inline bool operator!=(const Prop& a, const Prop& b) { return !(a == b); }

inline std::string to_string(const Prop& p) {
  switch (p.kind()) {
    case Prop::Kind::Atomic:
      return to_string(p.atom());
    case Prop::Kind::Falsum:
      return "false";
    case Prop::Kind::Neg:
      return "~" + to_string(p.child());
    case Prop::Kind::Or:
      return "(" + to_string(p.left()) + " \\/ " + to_string(p.right()) + ")";
    case Prop::Kind::Forall:
      return "forall " + var_name(p.bound_var()) + ". " + to_string(p.child());
  }
  return "?";
}

inline std::optional<Prop> subprop_at(const Prop& p, const PropPath& path, size_t i = 0) {
  if (i == path.size()) return p;
  switch (p.kind()) {
    case Prop::Kind::Neg:
    case Prop::Kind::Forall:
      if (path[i] != 0) return std::nullopt;
      return subprop_at(p.child(), path, i + 1);
    case Prop::Kind::Or:
      if (path[i] == 0) return subprop_at(p.left(), path, i + 1);
      if (path[i] == 1) return subprop_at(p.right(), path, i + 1);
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

inline std::optional<Prop> replace_at(const Prop& p, const PropPath& path, const Prop& repl,
                                      size_t i = 0) {
  if (i == path.size()) return repl;
  switch (p.kind()) {
    case Prop::Kind::Neg: {
      if (path[i] != 0) return std::nullopt;
      auto c = replace_at(p.child(), path, repl, i + 1);
      if (!c) return std::nullopt;
      return Prop::neg(*c);
    }
    case Prop::Kind::Forall: {
      if (path[i] != 0) return std::nullopt;
      auto c = replace_at(p.child(), path, repl, i + 1);
      if (!c) return std::nullopt;
      return Prop::forall(p.bound_var(), *c);
    }
    case Prop::Kind::Or: {
      if (path[i] == 0) {
        auto c = replace_at(p.left(), path, repl, i + 1);
        if (!c) return std::nullopt;
        return Prop::disj(*c, p.right());
      }
      if (path[i] == 1) {
        auto c = replace_at(p.right(), path, repl, i + 1);
        if (!c) return std::nullopt;
        return Prop::disj(p.left(), *c);
      }
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

}  // namespace polres

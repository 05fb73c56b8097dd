// SPDX-License-Identifier: Apache-2.0
#include "mover/wellformed.hpp"

#include <set>

#include "mover/parser.hpp"

namespace mover {
namespace {

enum class Ty { Int, Bool, None, List, OptInt, Bad };

const char* ty_name(Ty t) {
  switch (t) {
    case Ty::Int: return "int";
    case Ty::Bool: return "bool";
    case Ty::None: return "None";
    case Ty::List: return "list";
    case Ty::OptInt: return "optional int";
    case Ty::Bad: return "ill-typed";
  }
  return "?";
}

Ty of_decl(TypeKind k) {
  switch (k) {
    case TypeKind::Int:
    case TypeKind::Lock: return Ty::Int;
    case TypeKind::OptInt: return Ty::OptInt;
    case TypeKind::ListInt: return Ty::List;
  }
  return Ty::Bad;
}

bool comparable(Ty a, Ty b) {
  if (a == b) return true;
  auto opt = [](Ty x) { return x == Ty::OptInt || x == Ty::Int || x == Ty::None; };
  return opt(a) && opt(b) && (a == Ty::OptInt || b == Ty::OptInt || a == Ty::None || b == Ty::None) &&
         !(a == Ty::Int && b == Ty::Int);
}

bool assignable(TypeKind target, Ty v) {
  switch (target) {
    case TypeKind::Int:
    case TypeKind::Lock: return v == Ty::Int;
    case TypeKind::OptInt: return v == Ty::Int || v == Ty::None || v == Ty::OptInt;
    case TypeKind::ListInt: return v == Ty::List;
  }
  return false;
}

class Checker {
 public:
  explicit Checker(const Program& p) : p_(p) {}

  std::vector<Diagnostic> run() {
    std::set<std::string> names;
    for (const auto& v : p_.vars) {
      if (!names.insert(v.name).second) diag(v.span, "duplicate declaration of '" + v.name + "'");
      for (const auto& c : v.clauses) formula(*c.condition, true, "mover clause");
    }
    for (const auto& f : p_.fns) {
      if (!names.insert(f.name).second) diag(f.span, "duplicate declaration of '" + f.name + "'");
    }
    for (const auto& f : p_.fns) {
      formula(*f.requires_, false, "requires clause");
      formula(*f.ensures, f.atomic, "ensures clause");
      if (f.relies) formula(*f.relies, true, "relies clause");
      if (f.guarantees) formula(*f.guarantees, true, "guarantees clause");
      stmt(*f.body);
    }
    for (const auto& e : p_.init) {
      const VarDecl* v = p_.find_var(e.var);
      if (!v) {
        diag(e.value->span, "init of undeclared variable '" + e.var + "'");
        continue;
      }
      bool has_vars = false;
      walk_expr(*e.value, [&](const Expr& x) {
        has_vars = has_vars || x.kind == ExprKind::Var || x.kind == ExprKind::Old ||
                   x.kind == ExprKind::Tid;
      });
      if (has_vars) diag(e.value->span, "init value of '" + e.var + "' must be a constant");
      else if (!assignable(v->type, type(*e.value, false))) diag(e.value->span, "init value of '" + e.var + "' has the wrong type");
    }
    if (p_.relies) formula(*p_.relies, true, "relies clause");
    if (p_.guarantees) formula(*p_.guarantees, true, "guarantees clause");
    if (p_.threads.empty()) diag({p_.file}, "program has no threads");
    for (const auto& t : p_.threads) stmt(*t);
    return std::move(out_);
  }

 private:
  void diag(const SourceSpan& s, std::string m) { out_.push_back({s, std::move(m)}); }

  Ty type(const Expr& e, bool allow_old) {
    switch (e.kind) {
      case ExprKind::Int: return Ty::Int;
      case ExprKind::Bool: return Ty::Bool;
      case ExprKind::None: return Ty::None;
      case ExprKind::Nil: return Ty::List;
      case ExprKind::Tid: return Ty::Int;
      case ExprKind::Var:
      case ExprKind::Old: {
        const VarDecl* v = p_.find_var(e.name);
        if (!v) {
          diag(e.span, "undeclared variable '" + e.name + "'");
          return Ty::Bad;
        }
        if (e.kind == ExprKind::Old && !allow_old) {
          diag(e.span, "old(" + e.name + ") is only allowed in two-store formulas");
        }
        return of_decl(v->type);
      }
      case ExprKind::Unary:
      case ExprKind::Call: {
        const Ty a = type(*e.args[0], allow_old);
        if (a == Ty::Bad) return a;
        switch (e.op) {
          case Op::Not: return expect(e, a, Ty::Bool, Ty::Bool);
          case Op::Neg: return expect(e, a, Ty::Int, Ty::Int);
          case Op::Even: return expect(e, a, Ty::Int, Ty::Bool);
          case Op::Head: return expect(e, a, Ty::List, Ty::Int);
          case Op::Tail: return expect(e, a, Ty::List, Ty::List);
          default: return Ty::Bad;
        }
      }
      case ExprKind::Binary: {
        const Ty a = type(*e.args[0], allow_old);
        const Ty b = type(*e.args[1], allow_old);
        if (a == Ty::Bad || b == Ty::Bad) return Ty::Bad;
        switch (e.op) {
          case Op::Add:
          case Op::Sub:
          case Op::Mul: return both(e, a, b, Ty::Int, Ty::Int);
          case Op::Lt:
          case Op::Le:
          case Op::Gt:
          case Op::Ge: return both(e, a, b, Ty::Int, Ty::Bool);
          case Op::And:
          case Op::Or:
          case Op::Implies: return both(e, a, b, Ty::Bool, Ty::Bool);
          case Op::Eq:
          case Op::Ne:
            if (comparable(a, b)) return Ty::Bool;
            diag(e.span, std::string("cannot compare ") + ty_name(a) + " with " + ty_name(b));
            return Ty::Bad;
          case Op::Cons:
            if (a == Ty::Int && b == Ty::List) return Ty::List;
            diag(e.span, "'::' needs an int and a list");
            return Ty::Bad;
          default: return Ty::Bad;
        }
      }
    }
    return Ty::Bad;
  }

  Ty expect(const Expr& e, Ty got, Ty want, Ty result) {
    if (got == want) return result;
    diag(e.span, std::string("expected ") + ty_name(want) + " operand, found " + ty_name(got));
    return Ty::Bad;
  }
  Ty both(const Expr& e, Ty a, Ty b, Ty want, Ty result) {
    if (a == want && b == want) return result;
    diag(e.span, std::string("expected ") + ty_name(want) + " operands in '" + print(e) + "'");
    return Ty::Bad;
  }

  void formula(const Expr& e, bool allow_old, const std::string& what) {
    const Ty t = type(e, allow_old);
    if (t != Ty::Bool && t != Ty::Bad) diag(e.span, what + " must be a boolean formula");
  }

  std::set<std::string> globals(const Expr* e) {
    std::set<std::string> g;
    if (!e) return g;
    walk_expr(*e, [&](const Expr& x) {
      if (x.kind != ExprKind::Var && x.kind != ExprKind::Old) return;
      const VarDecl* v = p_.find_var(x.name);
      if (v && !v->local) g.insert(x.name);
    });
    return g;
  }

  void single_global(const Stmt& s, std::set<std::string> g) {
    if (g.size() > 1) {
      std::string names;
      for (const auto& n : g) names += (names.empty() ? "" : ", ") + n;
      diag(s.span, "multi-global action touches " + names);
    }
  }

  const VarDecl* var(const Stmt& s, const std::string& n) {
    const VarDecl* v = p_.find_var(n);
    if (!v) diag(s.span, "undeclared variable '" + n + "'");
    return v;
  }

  void cond(const Stmt& s) {
    const Cond& c = s.cond;
    if (c.kind == Cond::Kind::Test) {
      formula(*c.test, false, "condition");
      single_global(s, globals(c.test.get()));
      return;
    }
    const VarDecl* v = var(s, c.var);
    const Ty e = type(*c.expected, false);
    const Ty d = type(*c.desired, false);
    if (!v) return;
    if (v->local) diag(s.span, "cas target '" + c.var + "' must be global");
    auto g = globals(c.expected.get());
    auto g2 = globals(c.desired.get());
    g.insert(g2.begin(), g2.end());
    if (!g.empty()) diag(s.span, "cas arguments must not read globals");
    if (e != Ty::Bad && !comparable(of_decl(v->type), e))
      diag(c.expected->span, "cas expected value has the wrong type");
    if (d != Ty::Bad && !assignable(v->type, d))
      diag(c.desired->span, "cas new value has the wrong type");
  }

  void stmt(const Stmt& s) {
    switch (s.kind) {
      case StmtKind::Skip:
      case StmtKind::Wrong: break;
      case StmtKind::Yield: break;  // in atomic bodies: M-yield against the empty guarantee
      case StmtKind::Assign: {
        const VarDecl* v = var(s, s.target);
        const Ty t = type(*s.expr, false);
        if (!v) break;
        if (t != Ty::Bad && !assignable(v->type, t))
          diag(s.span, "cannot assign " + std::string(ty_name(t)) + " to '" + s.target + "'");
        auto g = globals(s.expr.get());
        if (!v->local) g.insert(v->name);
        single_global(s, g);
        break;
      }
      case StmtKind::UnstableRead: {
        const VarDecl* r = var(s, s.target);
        const VarDecl* x = var(s, s.source);
        if (!r || !x) break;
        if (!r->local) diag(s.span, "'" + s.target + "' must be thread-local");
        if (x->local) diag(s.span, "'" + s.source + "' must be global");
        if (!assignable(r->type, of_decl(x->type)))
          diag(s.span, "'" + s.target + "' cannot hold values of '" + s.source + "'");
        break;
      }
      case StmtKind::Acquire:
      case StmtKind::Release: {
        const VarDecl* m = var(s, s.target);
        if (m && m->type != TypeKind::Lock) diag(s.span, "'" + s.target + "' is not a lock");
        break;
      }
      case StmtKind::If:
        if (!s.from_assert) cond(s);
        else {
          formula(*s.cond.test, false, "assertion");
          single_global(s, globals(s.cond.test.get()));
        }
        stmt(*s.children[0]);
        stmt(*s.children[1]);
        break;
      case StmtKind::While:
        cond(s);
        if (s.invariant) formula(*s.invariant, true, "loop invariant");
        stmt(*s.children[0]);
        break;
      case StmtKind::Block:
        for (const auto& c : s.children) stmt(*c);
        break;
      case StmtKind::Call:
        if (!p_.find_fn(s.target)) diag(s.span, "call to undeclared function '" + s.target + "'");
        break;
    }
  }

  const Program& p_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> well_formed(const Program& p) { return Checker(p).run(); }

}  // namespace mover

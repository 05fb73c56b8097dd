// SPDX-License-Identifier: Apache-2.0
#include "mover/ast.hpp"

#include <sstream>

namespace mover {

std::string SourceSpan::str() const {
  std::ostringstream os;
  if (!file.empty()) os << file << ':';
  os << line << ':' << column;
  return os.str();
}

ExprPtr Expr::integer(std::int64_t v, SourceSpan s) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Int;
  e->value = v;
  e->span = std::move(s);
  return e;
}

ExprPtr Expr::boolean(bool b, SourceSpan s) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Bool;
  e->value = b ? 1 : 0;
  e->span = std::move(s);
  return e;
}

ExprPtr Expr::var(std::string n, SourceSpan s) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Var;
  e->name = std::move(n);
  e->span = std::move(s);
  return e;
}

ExprPtr Expr::old(std::string n, SourceSpan s) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Old;
  e->name = std::move(n);
  e->span = std::move(s);
  return e;
}

ExprPtr Expr::leaf(ExprKind k, SourceSpan s) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->span = std::move(s);
  return e;
}

ExprPtr Expr::unary(Op op, ExprPtr a, SourceSpan s) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Unary;
  e->op = op;
  e->args = {std::move(a)};
  e->span = std::move(s);
  return e;
}

ExprPtr Expr::binary(Op op, ExprPtr a, ExprPtr b, SourceSpan s) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Binary;
  e->op = op;
  e->args = {std::move(a), std::move(b)};
  e->span = std::move(s);
  return e;
}

ExprPtr Expr::call(Op op, ExprPtr a, SourceSpan s) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Call;
  e->op = op;
  e->args = {std::move(a)};
  e->span = std::move(s);
  return e;
}

bool same(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind || a->args.size() != b->args.size()) return false;
  switch (a->kind) {
    case ExprKind::Int:
    case ExprKind::Bool:
      if (a->value != b->value) return false;
      break;
    case ExprKind::Var:
    case ExprKind::Old:
      if (a->name != b->name) return false;
      break;
    case ExprKind::Unary:
    case ExprKind::Binary:
    case ExprKind::Call:
      if (a->op != b->op) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!same(a->args[i], b->args[i])) return false;
  return true;
}

bool mentions_old(const Expr& e) {
  bool found = false;
  walk_expr(e, [&](const Expr& n) { found = found || n.kind == ExprKind::Old; });
  return found;
}

bool Stmt::is_action() const {
  switch (kind) {
    case StmtKind::Assign:
    case StmtKind::UnstableRead:
    case StmtKind::Acquire:
    case StmtKind::Release:
      return true;
    default:
      return false;
  }
}

namespace {

bool same_cond(const Cond& a, const Cond& b) {
  return a.kind == b.kind && a.negated == b.negated && same(a.test, b.test) &&
         a.var == b.var && same(a.expected, b.expected) && same(a.desired, b.desired);
}

bool same_stmt(const StmtPtr& a, const StmtPtr& b) {
  if (!a || !b) return !a && !b;
  return same(*a, *b);
}

}  // namespace

bool same(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind || a.target != b.target || a.source != b.source ||
      !same(a.expr, b.expr) || a.from_assert != b.from_assert ||
      !same(a.invariant, b.invariant) || a.children.size() != b.children.size())
    return false;
  if ((a.kind == StmtKind::If || a.kind == StmtKind::While) && !same_cond(a.cond, b.cond))
    return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!same_stmt(a.children[i], b.children[i])) return false;
  return true;
}

const VarDecl* Program::find_var(const std::string& n) const {
  for (const auto& v : vars)
    if (v.name == n) return &v;
  return nullptr;
}

const FnDecl* Program::find_fn(const std::string& n) const {
  for (const auto& f : fns)
    if (f.name == n) return &f;
  return nullptr;
}

void Program::number() {
  by_id_.clear();
  auto visit = [&](const StmtPtr& root) {
    walk(*root, [&](const Stmt& s) {
      const_cast<Stmt&>(s).id = static_cast<int>(by_id_.size());
      by_id_.push_back(&s);
    });
  };
  for (const auto& f : fns) visit(f.body);
  for (const auto& t : threads) visit(t);
  stmt_count = static_cast<int>(by_id_.size());
}

const Stmt* Program::stmt(int id) const {
  if (id < 0 || id >= static_cast<int>(by_id_.size())) return nullptr;
  return by_id_[static_cast<std::size_t>(id)];
}

bool same(const Program& a, const Program& b) {
  if (a.bits != b.bits || a.list_depth != b.list_depth || a.vars.size() != b.vars.size() ||
      a.fns.size() != b.fns.size() || a.init.size() != b.init.size() ||
      a.threads.size() != b.threads.size() || !same(a.relies, b.relies) ||
      !same(a.guarantees, b.guarantees))
    return false;
  for (std::size_t i = 0; i < a.vars.size(); ++i) {
    const auto& x = a.vars[i];
    const auto& y = b.vars[i];
    if (x.name != y.name || x.type != y.type || x.local != y.local ||
        x.clauses.size() != y.clauses.size())
      return false;
    for (std::size_t c = 0; c < x.clauses.size(); ++c)
      if (x.clauses[c].access != y.clauses[c].access ||
          x.clauses[c].effect != y.clauses[c].effect ||
          !same(x.clauses[c].condition, y.clauses[c].condition))
        return false;
  }
  for (std::size_t i = 0; i < a.fns.size(); ++i) {
    const auto& f = a.fns[i];
    const auto& g = b.fns[i];
    if (f.name != g.name || f.atomic != g.atomic || f.effect != g.effect ||
        !same(f.requires_, g.requires_) || !same(f.ensures, g.ensures) ||
        !same(f.relies, g.relies) || !same(f.guarantees, g.guarantees) ||
        !same(*f.body, *g.body))
      return false;
  }
  for (std::size_t i = 0; i < a.init.size(); ++i)
    if (a.init[i].var != b.init[i].var || !same(a.init[i].value, b.init[i].value)) return false;
  for (std::size_t i = 0; i < a.threads.size(); ++i)
    if (!same(*a.threads[i], *b.threads[i])) return false;
  return true;
}

}  // namespace mover

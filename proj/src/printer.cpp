// SPDX-License-Identifier: Apache-2.0
#include <sstream>

#include "mover/parser.hpp"

namespace mover {
namespace {

int precedence(const Expr& e) {
  if (e.kind == ExprKind::Unary) return 8;
  if (e.kind != ExprKind::Binary) return 9;
  switch (e.op) {
    case Op::Implies: return 1;
    case Op::Or: return 2;
    case Op::And: return 3;
    case Op::Eq:
    case Op::Ne:
    case Op::Lt:
    case Op::Le:
    case Op::Gt:
    case Op::Ge: return 4;
    case Op::Cons: return 5;
    case Op::Add:
    case Op::Sub: return 6;
    case Op::Mul: return 7;
    default: return 9;
  }
}

const char* op_text(Op op) {
  switch (op) {
    case Op::Not: return "!";
    case Op::Neg: return "-";
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Eq: return "==";
    case Op::Ne: return "!=";
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Gt: return ">";
    case Op::Ge: return ">=";
    case Op::And: return "&&";
    case Op::Or: return "||";
    case Op::Implies: return "==>";
    case Op::Cons: return "::";
    case Op::Even: return "even";
    case Op::Head: return "head";
    case Op::Tail: return "tail";
  }
  return "?";
}

void emit(std::ostream& os, const Expr& e);

void emit_child(std::ostream& os, const Expr& child, int min_prec) {
  bool paren = precedence(child) < min_prec ||
               // negative literals under unary minus / binary operators read ambiguously
               (child.kind == ExprKind::Int && child.value < 0 && min_prec >= 6);
  if (paren) os << '(';
  emit(os, child);
  if (paren) os << ')';
}

void emit(std::ostream& os, const Expr& e) {
  switch (e.kind) {
    case ExprKind::Int: os << e.value; return;
    case ExprKind::Bool: os << (e.value ? "true" : "false"); return;
    case ExprKind::None: os << "None"; return;
    case ExprKind::Nil: os << "Nil"; return;
    case ExprKind::Var: os << e.name; return;
    case ExprKind::Old: os << "old(" << e.name << ')'; return;
    case ExprKind::Tid: os << "tid"; return;
    case ExprKind::Call:
      os << op_text(e.op) << '(';
      emit(os, *e.args[0]);
      os << ')';
      return;
    case ExprKind::Unary:
      os << op_text(e.op);
      emit_child(os, *e.args[0], 8);
      return;
    case ExprKind::Binary: {
      int p = precedence(e);
      bool right_assoc = e.op == Op::Implies || e.op == Op::Cons;
      bool non_assoc = p == 4;
      int left_min = right_assoc || non_assoc ? p + 1 : p;
      int right_min = right_assoc ? p : p + 1;
      emit_child(os, *e.args[0], left_min);
      os << ' ' << op_text(e.op) << ' ';
      emit_child(os, *e.args[1], right_min);
      return;
    }
  }
}

const char* type_text(TypeKind t) {
  switch (t) {
    case TypeKind::Int: return "int";
    case TypeKind::Lock: return "lock";
    case TypeKind::OptInt: return "optional int";
    case TypeKind::ListInt: return "list int";
  }
  return "int";
}

void indent(std::ostream& os, int depth) {
  for (int i = 0; i < depth; ++i) os << "  ";
}

void emit_block(std::ostream& os, const Stmt& b, int depth);

void emit_stmt(std::ostream& os, const Stmt& s, int depth) {
  indent(os, depth);
  switch (s.kind) {
    case StmtKind::If:
      if (s.from_assert) {
        os << "assert " << print(*s.cond.test) << ";\n";
        return;
      }
      os << "if (" << print(s.cond) << ") ";
      emit_block(os, *s.children[0], depth);
      if (!s.children[1]->children.empty()) {
        os << " else ";
        emit_block(os, *s.children[1], depth);
      }
      os << '\n';
      return;
    case StmtKind::While:
      os << "while (" << print(s.cond) << ") ";
      if (s.invariant) os << "invariant " << print(*s.invariant) << ' ';
      emit_block(os, *s.children[0], depth);
      os << '\n';
      return;
    case StmtKind::Block:
      emit_block(os, s, depth);
      os << '\n';
      return;
    default:
      os << print_head(s) << '\n';
      return;
  }
}

void emit_block(std::ostream& os, const Stmt& b, int depth) {
  os << "{\n";
  for (const auto& c : b.children) emit_stmt(os, *c, depth + 1);
  indent(os, depth);
  os << '}';
}

}  // namespace

std::string print(const Expr& e) {
  std::ostringstream os;
  emit(os, e);
  return os.str();
}

std::string print(const Cond& c) {
  if (c.kind == Cond::Kind::Test) return print(*c.test);
  std::ostringstream os;
  if (c.negated) os << '!';
  os << "cas(" << c.var << ", " << print(*c.expected) << ", " << print(*c.desired) << ')';
  return os.str();
}

std::string print_head(const Stmt& s) {
  switch (s.kind) {
    case StmtKind::Skip: return "skip;";
    case StmtKind::Wrong: return "wrong;";
    case StmtKind::Yield: return "yield;";
    case StmtKind::Assign: return s.target + " = " + print(*s.expr) + ";";
    case StmtKind::UnstableRead: return s.target + " ~= " + s.source + ";";
    case StmtKind::Acquire: return "acquire(" + s.target + ");";
    case StmtKind::Release: return "release(" + s.target + ");";
    case StmtKind::Call: return s.target + "();";
    case StmtKind::If:
      if (s.from_assert) return "assert " + print(*s.cond.test) + ";";
      return "if (" + print(s.cond) + ")";
    case StmtKind::While: return "while (" + print(s.cond) + ")";
    case StmtKind::Block: return "{ ... }";
  }
  return "";
}

std::string print(const Program& p) {
  std::ostringstream os;
  os << "bits " << p.bits << ";\n";
  os << "listdepth " << p.list_depth << ";\n\n";
  for (const auto& v : p.vars) {
    if (v.local) {
      os << "local " << type_text(v.type) << ' ' << v.name << ";\n";
      continue;
    }
    os << type_text(v.type) << ' ' << v.name;
    for (const auto& c : v.clauses) {
      os << "\n  " << (c.access == Access::Read ? "read " : "write ") << keyword(c.effect)
         << " if " << print(*c.condition);
    }
    os << ";\n";
  }
  for (const auto& f : p.fns) {
    os << '\n';
    if (f.atomic) {
      os << "atomic";
      if (f.effect != Effect::N) os << ' ' << keyword(f.effect);
      os << "\n  requires " << print(*f.requires_) << "\n  ensures " << print(*f.ensures) << '\n';
    } else {
      os << "relies " << print(*f.relies) << "\n  guarantees " << print(*f.guarantees)
         << "\n  requires " << print(*f.requires_) << "\n  ensures " << print(*f.ensures) << '\n';
    }
    os << f.name << "() ";
    emit_block(os, *f.body, 0);
    os << '\n';
  }
  os << "\ninit {";
  for (const auto& e : p.init) os << ' ' << e.var << " = " << print(*e.value) << ';';
  os << " }\n";
  if (p.relies) os << "relies " << print(*p.relies) << ";\n";
  if (p.guarantees) os << "guarantees " << print(*p.guarantees) << ";\n";
  for (const auto& t : p.threads) {
    os << "\nthread ";
    emit_block(os, *t, 0);
    os << '\n';
  }
  return os.str();
}

}  // namespace mover

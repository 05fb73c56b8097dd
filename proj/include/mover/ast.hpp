// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mover/effect.hpp"

namespace mover {

struct SourceSpan {
  std::string file;
  int line = 0;
  int column = 0;
  int end_line = 0;
  int end_column = 0;

  std::string str() const;
};

enum class ExprKind { Int, Bool, None, Nil, Var, Old, Tid, Unary, Binary, Call };

enum class Op {
  // unary
  Not,
  Neg,
  // binary
  Add,
  Sub,
  Mul,
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  And,
  Or,
  Implies,
  Cons,
  // builtin calls
  Even,
  Head,
  Tail,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Expressions and formulas share one tree. `old(x)` is an Old node naming x.
struct Expr {
  ExprKind kind = ExprKind::Int;
  Op op = Op::Add;
  std::int64_t value = 0;  // Int literal, or Bool literal (0/1)
  std::string name;        // Var / Old
  std::vector<ExprPtr> args;
  SourceSpan span;

  static ExprPtr integer(std::int64_t v, SourceSpan s = {});
  static ExprPtr boolean(bool b, SourceSpan s = {});
  static ExprPtr var(std::string n, SourceSpan s = {});
  static ExprPtr old(std::string n, SourceSpan s = {});
  static ExprPtr unary(Op op, ExprPtr a, SourceSpan s = {});
  static ExprPtr binary(Op op, ExprPtr a, ExprPtr b, SourceSpan s = {});
  static ExprPtr leaf(ExprKind k, SourceSpan s = {});
  static ExprPtr call(Op op, ExprPtr a, SourceSpan s = {});
};

/// Structural equality, ignoring spans.
bool same(const ExprPtr& a, const ExprPtr& b);
bool mentions_old(const Expr& e);

/// A conditional action: a state test, or cas(var, expected, desired).
/// `negated` swaps the success and failure components.
struct Cond {
  enum class Kind { Test, Cas } kind = Kind::Test;
  bool negated = false;
  ExprPtr test;
  std::string var;
  ExprPtr expected;
  ExprPtr desired;
  SourceSpan span;
};

enum class StmtKind {
  Skip,
  Wrong,
  Yield,
  Assign,
  UnstableRead,
  Acquire,
  Release,
  If,
  While,
  Block,
  Call,
};

struct Stmt;
using StmtPtr = std::shared_ptr<Stmt>;

struct Stmt {
  StmtKind kind = StmtKind::Skip;
  SourceSpan span;
  int id = -1;             // dense, assigned by Program::number()
  std::string target;      // assigned / read-into variable, lock, callee
  std::string source;      // global read by `~=`
  ExprPtr expr;            // right-hand side of Assign
  Cond cond;               // If / While
  ExprPtr invariant;       // While, optional
  bool from_assert = false;  // If produced by `assert B`
  std::vector<StmtPtr> children;  // Block items; If: {then, else}; While: {body}

  bool is_action() const;
};

bool same(const Stmt& a, const Stmt& b);

enum class TypeKind { Int, Lock, OptInt, ListInt };
enum class Access { Read, Write };

struct MoverClause {
  Access access = Access::Read;
  Effect effect = Effect::B;
  ExprPtr condition;
  SourceSpan span;
};

struct VarDecl {
  std::string name;
  TypeKind type = TypeKind::Int;
  bool local = false;
  std::vector<MoverClause> clauses;
  SourceSpan span;
};

struct FnDecl {
  std::string name;
  bool atomic = true;
  Effect effect = Effect::N;  // declared atomic effect; N when elided
  bool effect_given = false;
  ExprPtr requires_;
  ExprPtr ensures;
  ExprPtr relies;       // non-atomic only
  ExprPtr guarantees;   // non-atomic only
  StmtPtr body;         // a Block
  SourceSpan span;
};

struct InitEntry {
  std::string var;
  ExprPtr value;
};

struct Program {
  std::string file;
  int bits = 5;
  int list_depth = 3;
  bool bits_given = false;
  bool depth_given = false;
  std::vector<VarDecl> vars;
  std::vector<FnDecl> fns;
  std::vector<InitEntry> init;
  ExprPtr relies;      // null when absent (means `true`)
  ExprPtr guarantees;  // null when absent (means `true`)
  std::vector<StmtPtr> threads;  // each a Block
  int stmt_count = 0;

  int thread_count() const { return static_cast<int>(threads.size()); }
  const VarDecl* find_var(const std::string& n) const;
  const FnDecl* find_fn(const std::string& n) const;

  /// Assigns dense statement ids in textual order.
  void number();
  /// Statement by id (valid after number()).
  const Stmt* stmt(int id) const;

 private:
  std::vector<const Stmt*> by_id_;
};

/// Equality of programs modulo source spans and statement ids.
bool same(const Program& a, const Program& b);

/// Visits every statement in pre-order.
template <typename F>
void walk(const Stmt& s, F&& f) {
  f(s);
  for (const auto& c : s.children) walk(*c, f);
}

template <typename F>
void walk_expr(const Expr& e, F&& f) {
  f(e);
  for (const auto& a : e.args) walk_expr(*a, f);
}

}  // namespace mover

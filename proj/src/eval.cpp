// SPDX-License-Identifier: Apache-2.0
#include "mover/eval.hpp"

#include <algorithm>
#include <stdexcept>

namespace mover {

namespace {

void add_unique(std::vector<int>& v, int x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

// Pure operator semantics shared by compiled and constant evaluation.
Value apply(const Model& m, Op op, const Value& a, const Value& b) {
  if (!a.defined()) return a;
  switch (op) {
    case Op::Not: return a.kind == VKind::Bool ? Value::boolean(!a.v) : Value::undef();
    case Op::Neg: return a.kind == VKind::Int ? Value::integer(m.wrap(-a.v)) : Value::undef();
    case Op::Even: return a.kind == VKind::Int ? Value::boolean(a.v % 2 == 0) : Value::undef();
    case Op::Head:
      return a.kind == VKind::List ? Value::integer(m.lists().head(a.v)) : Value::undef();
    case Op::Tail:
      return a.kind == VKind::List ? Value::list(m.lists().tail(a.v)) : Value::undef();
    default: break;
  }
  if (!b.defined()) return b;
  const bool ints = a.kind == VKind::Int && b.kind == VKind::Int;
  switch (op) {
    case Op::Add: return ints ? Value::integer(m.wrap(a.v + b.v)) : Value::undef();
    case Op::Sub: return ints ? Value::integer(m.wrap(a.v - b.v)) : Value::undef();
    case Op::Mul: return ints ? Value::integer(m.wrap(a.v * b.v)) : Value::undef();
    case Op::Eq: return Value::boolean(a == b);
    case Op::Ne: return Value::boolean(!(a == b));
    case Op::Lt: return ints ? Value::boolean(a.v < b.v) : Value::undef();
    case Op::Le: return ints ? Value::boolean(a.v <= b.v) : Value::undef();
    case Op::Gt: return ints ? Value::boolean(a.v > b.v) : Value::undef();
    case Op::Ge: return ints ? Value::boolean(a.v >= b.v) : Value::undef();
    case Op::Cons: {
      if (a.kind != VKind::Int || b.kind != VKind::List) return Value::undef();
      const auto c = m.lists().cons(a.v, b.v);
      return c < 0 ? Value::undef() : Value::list(c);
    }
    default: return Value::undef();
  }
}

bool is_bool(const Value& v) { return v.kind == VKind::Bool; }

}  // namespace

Compiled::Compiled(const StateSpace& space, int tid, const ExprPtr& e) : space_(&space), tid_(tid) {
  if (e) build(*e);
}

int Compiled::build(const Expr& e) {
  Node n{e.kind, e.op, e.value};
  if (e.kind == ExprKind::Var || e.kind == ExprKind::Old) {
    const int v = space_->model().var_index(e.name);
    if (v < 0) throw std::logic_error("unknown variable " + e.name);
    n.slot = space_->slot_for(v, tid_);
    if (n.slot < 0) throw std::logic_error("variable " + e.name + " is not in the working space");
    add_unique(e.kind == ExprKind::Old ? pre_slots_ : post_slots_, n.slot);
  }
  if (!e.args.empty()) n.a = build(*e.args[0]);
  if (e.args.size() > 1) n.b = build(*e.args[1]);
  nodes_.push_back(n);
  return static_cast<int>(nodes_.size()) - 1;
}

Value Compiled::eval(const std::int32_t* pre, const std::int32_t* post) const {
  if (nodes_.empty()) return Value::boolean(true);
  return run(static_cast<int>(nodes_.size()) - 1, pre, post);
}

Value Compiled::run(int i, const std::int32_t* pre, const std::int32_t* post) const {
  const Node& n = nodes_[static_cast<std::size_t>(i)];
  const Model& m = space_->model();
  switch (n.kind) {
    case ExprKind::Int: return Value::integer(m.wrap(n.value));
    case ExprKind::Bool: return Value::boolean(n.value != 0);
    case ExprKind::None: return Value::none();
    case ExprKind::Nil: return Value::list(0);
    case ExprKind::Tid: return Value::integer(tid_);
    case ExprKind::Var: return m.decode(space_->domain(n.slot), post[n.slot]);
    case ExprKind::Old: return m.decode(space_->domain(n.slot), pre[n.slot]);
    case ExprKind::Unary:
    case ExprKind::Call: return apply(m, n.op, run(n.a, pre, post), {});
    case ExprKind::Binary: {
      const Value a = run(n.a, pre, post);
      if (n.op == Op::And || n.op == Op::Or || n.op == Op::Implies) {
        if (!is_bool(a)) return Value::undef();
        if (n.op == Op::And && !a.v) return a;
        if (n.op == Op::Or && a.v) return a;
        if (n.op == Op::Implies && !a.v) return Value::boolean(true);
        const Value b = run(n.b, pre, post);
        return is_bool(b) ? b : Value::undef();
      }
      return apply(m, n.op, a, run(n.b, pre, post));
    }
  }
  return Value::undef();
}

Value eval_constant(const Model& m, const Expr& e) {
  switch (e.kind) {
    case ExprKind::Int: return Value::integer(m.wrap(e.value));
    case ExprKind::Bool: return Value::boolean(e.value != 0);
    case ExprKind::None: return Value::none();
    case ExprKind::Nil: return Value::list(0);
    case ExprKind::Unary:
    case ExprKind::Call: return apply(m, e.op, eval_constant(m, *e.args[0]), {});
    case ExprKind::Binary: {
      const Value a = eval_constant(m, *e.args[0]);
      const Value b = eval_constant(m, *e.args[1]);
      if (e.op == Op::And || e.op == Op::Or || e.op == Op::Implies) {
        if (!is_bool(a) || !is_bool(b)) return Value::undef();
        if (e.op == Op::And) return Value::boolean(a.v && b.v);
        if (e.op == Op::Or) return Value::boolean(a.v || b.v);
        return Value::boolean(!a.v || b.v);
      }
      return apply(m, e.op, a, b);
    }
    default: return Value::undef();
  }
}

std::vector<Instance> mentioned(const Model& m, const Expr* e, int tid) {
  std::vector<Instance> out;
  if (!e) return out;
  walk_expr(*e, [&](const Expr& x) {
    if (x.kind != ExprKind::Var && x.kind != ExprKind::Old) return;
    const int v = m.var_index(x.name);
    if (v < 0) return;
    out.push_back({v, m.var(v).local ? tid : 0});
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Instance> merge(std::vector<Instance> a, const std::vector<Instance>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

}  // namespace mover

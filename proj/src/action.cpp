// SPDX-License-Identifier: Apache-2.0
#include "mover/action.hpp"

#include <stdexcept>

#include "mover/parser.hpp"

namespace mover {

namespace {

// The conditional of an if/while; cas negation swaps which component
// enters the body.
bool cas_success_component(const Cond& c, int branch) { return (branch == 0) != c.negated; }

int global_read(const Model& m, const Expr* e) {
  for (const auto& i : mentioned(m, e, 1))
    if (!m.var(i.var).local) return i.var;
  return -1;
}

}  // namespace

std::string ActionRef::describe() const {
  const Stmt& s = *stmt;
  if (!conditional()) return print_head(s);
  const Cond& c = s.cond;
  if (c.kind == Cond::Kind::Cas) {
    Cond plain = c;
    plain.negated = false;
    return print(plain) + (cas_success_component(c, branch) ? " succeeds" : " fails");
  }
  return (branch == 0 ? "assume " : "assume !(") + print(*c.test) + (branch == 0 ? "" : ")");
}

ActionAccess classify(const Model& m, const ActionRef& a) {
  const Stmt& s = *a.stmt;
  if (a.conditional()) {
    const Cond& c = s.cond;
    if (c.kind == Cond::Kind::Cas) {
      if (!cas_success_component(c, a.branch)) return {AccessKind::LocalOnly, -1};
      return {AccessKind::GlobalWrite, m.var_index(c.var)};
    }
    const int g = global_read(m, c.test.get());
    return g < 0 ? ActionAccess{AccessKind::LocalOnly, -1} : ActionAccess{AccessKind::GlobalRead, g};
  }
  switch (s.kind) {
    case StmtKind::Assign: {
      const int v = m.var_index(s.target);
      if (!m.var(v).local) return {AccessKind::GlobalWrite, v};
      const int g = global_read(m, s.expr.get());
      return g < 0 ? ActionAccess{AccessKind::LocalOnly, -1} : ActionAccess{AccessKind::GlobalRead, g};
    }
    case StmtKind::UnstableRead: return {AccessKind::GlobalRead, m.var_index(s.source)};
    case StmtKind::Acquire:
    case StmtKind::Release: return {AccessKind::GlobalWrite, m.var_index(s.target)};
    default: return {AccessKind::LocalOnly, -1};
  }
}

Footprint footprint(const Model& m, const ActionRef& a, int tid) {
  Footprint f;
  auto inst = [&](const std::string& name) {
    const int v = m.var_index(name);
    return Instance{v, m.var(v).local ? tid : 0};
  };
  const Stmt& s = *a.stmt;
  if (a.conditional()) {
    const Cond& c = s.cond;
    if (c.kind == Cond::Kind::Test) {
      f.reads = mentioned(m, c.test.get(), tid);
    } else if (cas_success_component(c, a.branch)) {
      f.reads = merge(mentioned(m, c.expected.get(), tid), mentioned(m, c.desired.get(), tid));
      f.reads = merge(f.reads, {inst(c.var)});
      f.writes = {inst(c.var)};
    }
    return f;
  }
  switch (s.kind) {
    case StmtKind::Assign:
      f.reads = mentioned(m, s.expr.get(), tid);
      f.writes = {inst(s.target)};
      break;
    case StmtKind::UnstableRead: f.writes = {inst(s.target)}; break;
    case StmtKind::Acquire:
      f.reads = {inst(s.target)};
      f.writes = {inst(s.target)};
      break;
    case StmtKind::Release: f.writes = {inst(s.target)}; break;
    default: break;
  }
  return f;
}

std::vector<ActionRef> program_actions(const Program& p) {
  std::vector<ActionRef> out;
  for (int id = 0; id < p.stmt_count; ++id) {
    const Stmt* s = p.stmt(id);
    if (s->kind == StmtKind::If || s->kind == StmtKind::While) {
      out.push_back({s, 0});
      out.push_back({s, 1});
    } else if (s->is_action()) {
      out.push_back({s, -1});
    }
  }
  return out;
}

Action::Action(const StateSpace& space, int tid, const ActionRef& ref)
    : space_(&space), tid_(tid), ref_(ref), access_(classify(space.model(), ref)) {
  const Model& m = space.model();
  const Stmt& s = *ref.stmt;
  auto slot_of = [&](const std::string& name) {
    const int v = m.var_index(name);
    if (v < 0) throw std::logic_error("unknown variable " + name);
    const int k = space.slot_for(v, tid);
    if (k < 0) throw std::logic_error(name + " is not in the working space");
    return k;
  };
  if (ref.conditional()) {
    const Cond& c = s.cond;
    if (c.kind == Cond::Kind::Test) {
      kind_ = Kind::Test;
      want_ = ref.branch == 0;
      a_ = Compiled(space, tid, c.test);
    } else if (cas_success_component(c, ref.branch)) {
      kind_ = Kind::CasSuccess;
      slot_ = slot_of(c.var);
      a_ = Compiled(space, tid, c.expected);
      b_ = Compiled(space, tid, c.desired);
    } else {
      kind_ = Kind::Identity;
    }
    return;
  }
  switch (s.kind) {
    case StmtKind::Assign:
      kind_ = Kind::Assign;
      slot_ = slot_of(s.target);
      a_ = Compiled(space, tid, s.expr);
      break;
    case StmtKind::UnstableRead:
      kind_ = Kind::Havoc;
      slot_ = slot_of(s.target);
      break;
    case StmtKind::Acquire:
      kind_ = Kind::Acquire;
      slot_ = slot_of(s.target);
      break;
    case StmtKind::Release:
      kind_ = Kind::Release;
      slot_ = slot_of(s.target);
      break;
    default: kind_ = Kind::Skip; break;
  }
}

void Action::successors(std::uint64_t index, std::vector<std::uint64_t>& out) const {
  Digits d;
  space_->decode(index, d);
  successors(d, index, out);
}

void Action::successors(const Digits& d, std::uint64_t index, std::vector<std::uint64_t>& out) const {
  const Model& m = space_->model();
  auto put = [&](std::int64_t digit) {
    const auto stride = space_->stride(slot_);
    out.push_back(index + static_cast<std::uint64_t>(digit) * stride -
                  static_cast<std::uint64_t>(d[static_cast<std::size_t>(slot_)]) * stride);
  };
  switch (kind_) {
    case Kind::Skip:
    case Kind::Identity: out.push_back(index); return;
    case Kind::Test:
      if (a_.holds(d, d) == want_) out.push_back(index);
      return;
    case Kind::Assign: {
      if (auto e = m.encode(space_->domain(slot_), a_.eval(d.data(), d.data()))) put(*e);
      return;
    }
    case Kind::Havoc:
      for (std::int64_t v = 0; v < space_->domain(slot_).size; ++v) put(v);
      return;
    case Kind::Acquire:
      if (space_->value(d, slot_) == Value::integer(0)) {
        if (auto e = m.encode(space_->domain(slot_), Value::integer(tid_))) put(*e);
      }
      return;
    case Kind::Release:
      if (auto e = m.encode(space_->domain(slot_), Value::integer(0))) put(*e);
      return;
    case Kind::CasSuccess: {
      const Value cur = space_->value(d, slot_);
      const Value want = a_.eval(d.data(), d.data());
      if (!want.defined() || !(cur == want)) return;
      if (auto e = m.encode(space_->domain(slot_), b_.eval(d.data(), d.data()))) put(*e);
      return;
    }
  }
}

bool Action::enabled(const Digits& d, std::uint64_t index) const {
  std::vector<std::uint64_t> out;
  successors(d, index, out);
  return !out.empty();
}

}  // namespace mover

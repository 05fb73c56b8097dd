// SPDX-License-Identifier: Apache-2.0
#include "mover/checker.hpp"

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <set>

#include "mover/action.hpp"
#include "mover/framed.hpp"
#include "mover/parser.hpp"
#include "mover/relation.hpp"
#include "mover/wellformed.hpp"

namespace mover {

std::string Failure::str() const {
  std::string s = span.str() + ": " + rule + ": " + message;
  if (!where.empty()) s += " (in " + where + ")";
  for (const auto& w : witness) s += "\n    witness: " + w;
  return s;
}

const StmtEffect* VerificationReport::effect_at(int stmt) const {
  for (const auto& e : effects)
    if (e.stmt == stmt) return &e;
  return nullptr;
}

bool VerificationReport::has(const std::string& rule) const {
  for (const auto& f : failures)
    if (f.rule == rule) return true;
  return false;
}

namespace {

// A rely or guarantee in scope: nullopt is the empty relation (atomic
// context), a null formula is `true`.
using RelSpec = std::optional<ExprPtr>;

struct Ctx {
  std::string where;
  RelSpec rely;
  RelSpec guarantee;
  bool report = true;
};

struct Judgment {
  Rel2 q;
  Effect e = Effect::B;
  bool promoted = false;  // a loop whose effect was raised to R
  Effect unpromoted = Effect::B;
};

class Verifier;

// Statement checking for one thread id over globals + that thread's locals.
class ThreadCheck {
 public:
  ThreadCheck(Verifier& v, int tid);

  const StateSpace& space() const { return space_; }
  int tid() const { return tid_; }

  Judgment check(const Stmt& s, const Rel2& p, const Ctx& c);
  Rel2 diag(const ExprPtr& f);
  std::optional<Triple> violates(const Rel2& p, const ExprPtr& f);
  std::string show(const Triple& t) const;
  std::string show(int tid, std::uint64_t s) const;

 private:
  const Action& action(const Stmt& s, int branch);
  const Compiled& compiled(const ExprPtr& f);
  const Rel1& denote1(const ExprPtr& f);
  Rel2 yield_close(const Rel2& p, const RelSpec& rely);
  std::optional<std::uint64_t> blocked_store(const Action& a, const Rel2& p);
  void note(const Rel2& r);

  Judgment primitive(const Stmt& s, const Rel2& p, const Ctx& c);
  Judgment block(const Stmt& s, const Rel2& p, const Ctx& c);
  Judgment branch(const Stmt& s, const Rel2& p, const Ctx& c);
  Judgment loop(const Stmt& s, const Rel2& p, const Ctx& c);
  Judgment yield(const Stmt& s, const Rel2& p, const Ctx& c);
  Judgment call(const Stmt& s, const Rel2& p, const Ctx& c);
  Effect component(const Action& a, const Rel2& p, const Stmt& s, const Ctx& c);
  Effect sequence(Effect a, const Judgment& b, const Stmt& at, const Ctx& c);

  Verifier& v_;
  const Model& m_;
  int tid_;
  StateSpace space_;
  MoverTable table_;
  std::map<std::pair<int, int>, std::unique_ptr<Action>> actions_;
  std::map<const Expr*, std::unique_ptr<Compiled>> compiled_;
  std::map<const Expr*, Rel1> denoted_;
  std::map<const Expr*, std::unique_ptr<Framed>> relies_;
  std::map<std::string, std::unique_ptr<Framed>> calls_;
  std::map<int, std::optional<std::uint64_t>> totality_;
};

class Verifier {
 public:
  Verifier(const Model& m, const CheckOptions& o) : m_(m), o_(o) {}

  VerificationReport run();

  const Model& model() const { return m_; }
  const CheckOptions& options() const { return o_; }
  VerificationReport& report() { return r_; }

  void fail(std::string rule, std::string message, const SourceSpan& span, const std::string& where,
            std::vector<std::string> witness) {
    const std::string key = rule + "|" + span.str() + "|" + message;
    if (!seen_.insert(key).second) return;
    r_.failures.push_back({std::move(rule), std::move(message), span, where, std::move(witness)});
  }

  void record(const Stmt& s, Effect e, const std::string& where) {
    auto it = effects_.find(s.id);
    if (it == effects_.end()) {
      effects_[s.id] = StmtEffect{s.id, s.span, print_head(s), where, e};
    } else {
      it->second.effect = join(it->second.effect, e);
    }
  }

  /// Instances written by f's body, including callees, for thread tid.
  std::vector<Instance> write_set(const FnDecl& f, int tid);

  /// A pair (σ, σ') with hyp@th and not concl@tc, keeping the locals of
  /// `fixed` (a tid, or 0) unchanged; `diagonal` restricts to σ = σ'.
  std::optional<std::string> counterexample(const RelSpec& hyp, int th, const RelSpec& concl, int tc,
                                            int fixed, bool diagonal = false);

  /// as_relation, memoized so that the result outlives every cache keyed on it.
  const ExprPtr& rel(const ExprPtr& f) {
    auto it = rel_.find(f.get());
    if (it == rel_.end()) it = rel_.emplace(f.get(), Model::as_relation(f)).first;
    return it->second;
  }

  void note_relation(std::uint64_t n) {
    r_.stats.largest_relation = std::max(r_.stats.largest_relation, n);
  }

 private:
  void check_function(const FnDecl& f);
  void check_thread(int t);
  void check_state();
  void check_recursion();
  ThreadCheck& thread(int t);

  const Model& m_;
  CheckOptions o_;
  VerificationReport r_;
  std::set<std::string> seen_;
  std::map<int, StmtEffect> effects_;
  std::map<int, std::unique_ptr<ThreadCheck>> threads_;
  std::map<const Expr*, ExprPtr> rel_;
};

// ---- ThreadCheck ------------------------------------------------------------

ThreadCheck::ThreadCheck(Verifier& v, int tid)
    : v_(v), m_(v.model()), tid_(tid), space_(StateSpace::thread(v.model(), tid)), table_(space_, tid) {
  Rel2::check_space(space_.size());
  v.report().stats.largest_space = std::max(v.report().stats.largest_space, space_.size());
}

const Action& ThreadCheck::action(const Stmt& s, int branch) {
  auto& slot = actions_[{s.id, branch}];
  if (!slot) slot = std::make_unique<Action>(space_, tid_, ActionRef{&s, branch});
  return *slot;
}

const Compiled& ThreadCheck::compiled(const ExprPtr& f) {
  auto& slot = compiled_[f.get()];
  if (!slot) slot = std::make_unique<Compiled>(space_, tid_, f);
  return *slot;
}

const Rel1& ThreadCheck::denote1(const ExprPtr& f) {
  auto it = denoted_.find(f.get());
  if (it != denoted_.end()) return it->second;
  const Compiled& c = compiled(f);
  Rel1 r(m_.threads(), space_.size());
  Digits d;
  for (std::uint64_t s = 0; s < space_.size(); ++s) {
    space_.decode(s, d);
    if (c.holds(d, d)) r.insert(tid_, s);
  }
  return denoted_.emplace(f.get(), std::move(r)).first->second;
}

Rel2 ThreadCheck::diag(const ExprPtr& f) { return two(denote1(f)); }

std::optional<Triple> ThreadCheck::violates(const Rel2& p, const ExprPtr& f) {
  const Compiled& c = compiled(f);
  Digits a, b;
  for (auto k : p.keys()) {
    const Triple t = Rel2::unpack(k);
    space_.decode(t.pre, a);
    space_.decode(t.post, b);
    if (!c.holds(a, b)) return t;
  }
  return std::nullopt;
}

std::string ThreadCheck::show(const Triple& t) const {
  return "thread " + std::to_string(t.tid) + ": old {" + space_.render(t.pre) + "} now {" +
         space_.render(t.post) + "}";
}

std::string ThreadCheck::show(int tid, std::uint64_t s) const {
  return "thread " + std::to_string(tid) + ": {" + space_.render(s) + "}";
}

void ThreadCheck::note(const Rel2& r) { v_.note_relation(r.size()); }

Rel2 ThreadCheck::yield_close(const Rel2& p, const RelSpec& rely) {
  if (!rely) return two(postof(p, m_.threads(), space_.size()));
  auto& slot = relies_[rely->get()];
  if (!slot) slot = std::make_unique<Framed>(space_, tid_, *rely, global_slots(space_));
  return mover::yield_close(p, slot->successors(), m_.threads(), space_.size());
}

std::optional<std::uint64_t> ThreadCheck::blocked_store(const Action& a, const Rel2& p) {
  std::vector<std::uint64_t> out;
  Digits d;
  if (v_.options().totality == Totality::Reachable) {
    std::optional<std::uint64_t> w;
    postof(p, m_.threads(), space_.size()).for_each([&](int, std::uint64_t s) {
      if (w) return;
      out.clear();
      a.successors(s, out);
      if (out.empty()) w = s;
    });
    return w;
  }
  auto it = totality_.find(a.ref().stmt->id);
  if (it != totality_.end()) return it->second;
  std::optional<std::uint64_t> w;
  for (std::uint64_t s = 0; s < space_.size() && !w; ++s) {
    space_.decode(s, d);
    out.clear();
    a.successors(d, s, out);
    if (out.empty()) w = s;
  }
  totality_[a.ref().stmt->id] = w;
  return w;
}

Judgment ThreadCheck::check(const Stmt& s, const Rel2& p, const Ctx& c) {
  if (c.report && v_.options().observe) v_.options().observe(s, tid_, space_, p);
  Judgment j;
  switch (s.kind) {
    case StmtKind::Skip: j = {p, Effect::B}; break;
    case StmtKind::Wrong:
      if (!p.empty() && c.report) {
        v_.fail("M-wrong", "wrong may be reached", s.span, c.where, {show(Rel2::unpack(p.keys().front()))});
      }
      j = {Rel2{}, Effect::B};
      break;
    case StmtKind::Yield: j = yield(s, p, c); break;
    case StmtKind::Block: j = block(s, p, c); break;
    case StmtKind::If: j = branch(s, p, c); break;
    case StmtKind::While: j = loop(s, p, c); break;
    case StmtKind::Call: j = call(s, p, c); break;
    default: j = primitive(s, p, c); break;
  }
  note(j.q);
  if (c.report && s.kind != StmtKind::Block) v_.record(s, j.e, c.where);
  return j;
}

Judgment ThreadCheck::primitive(const Stmt& s, const Rel2& p, const Ctx& c) {
  const Action& a = action(s, -1);
  const EffectOver eo = effect_over(a, table_, p);
  if (c.report && eo.effect == Effect::E) {
    v_.fail("M-action", "effect E at " + a.ref().describe() + ": no mover clause matches", s.span, c.where,
            {show(eo.witness->first, eo.witness->second)});
  }
  if (c.report && eo.effect != Effect::E && leq(eo.effect, Effect::L)) {
    if (auto w = blocked_store(a, p)) {
      v_.fail("M-action", "left-mover totality: " + a.ref().describe() + " (effect " +
                              std::string(name(eo.effect)) + ") is not total",
              s.span, c.where, {show(tid_, *w)});
    }
  }
  return {compose(p, [&a](int, std::uint64_t x, std::vector<std::uint64_t>& out) { a.successors(x, out); }),
          eo.effect};
}

Effect ThreadCheck::component(const Action& a, const Rel2& p, const Stmt& s, const Ctx& c) {
  const EffectOver eo = effect_over(a, table_, p);
  if (c.report && eo.effect == Effect::E) {
    v_.fail("M-action", "effect E at " + a.ref().describe() + ": no mover clause matches", s.span, c.where,
            {show(eo.witness->first, eo.witness->second)});
  }
  return eo.effect;
}

// seq(a, b.e), reporting a newly created E at `at`.
Effect ThreadCheck::sequence(Effect a, const Judgment& b, const Stmt& at, const Ctx& c) {
  const Effect e = seq(a, b.e);
  if (e == Effect::E && a != Effect::E && b.e != Effect::E && c.report) {
    if (b.promoted && seq(a, b.unpromoted) != Effect::E) {
      v_.fail("M-while", "left-mover termination: loop after the commit point of a reducible sequence (effect " +
                             std::string(name(a)) + " followed by loop " + std::string(name(b.unpromoted)) + ")",
              at.span, c.where, {"effect so far " + std::string(name(a)) + ", loop must count as " + std::string(name(b.e))});
    } else {
      v_.fail("M-seq", "non-reducible sequence: effect " + std::string(name(a)) + " followed by " +
                           std::string(name(b.e)) + " at " + print_head(at),
              at.span, c.where, {"seq(" + std::string(name(a)) + ", " + std::string(name(b.e)) + ") = E"});
    }
  }
  return e;
}

Judgment ThreadCheck::block(const Stmt& s, const Rel2& p, const Ctx& c) {
  Judgment acc{p, Effect::B};
  for (const auto& child : s.children) {
    Judgment j = check(*child, acc.q, c);
    const Effect before = acc.e;
    acc.e = sequence(before, j, *child, c);
    acc.q = std::move(j.q);
    if (s.children.size() == 1) {
      acc.promoted = j.promoted;
      acc.unpromoted = j.unpromoted;
    }
  }
  return acc;
}

Judgment ThreadCheck::branch(const Stmt& s, const Rel2& p, const Ctx& c) {
  const Action& a1 = action(s, 0);
  const Action& a2 = action(s, 1);
  const Effect e1 = component(a1, p, s, c);
  const Effect e2 = component(a2, p, s, c);
  auto step = [](const Action& a) {
    return [&a](int, std::uint64_t x, std::vector<std::uint64_t>& out) { a.successors(x, out); };
  };
  Judgment j1 = check(*s.children[0], compose(p, step(a1)), c);
  Judgment j2 = check(*s.children[1], compose(p, step(a2)), c);
  const Effect left = sequence(e1, j1, *s.children[0], c);
  const Effect right = sequence(e2, j2, *s.children[1], c);
  return {unite(j1.q, j2.q), join(left, right)};
}

Judgment ThreadCheck::loop(const Stmt& s, const Rel2& p, const Ctx& c) {
  const Action& a1 = action(s, 0);
  const Action& a2 = action(s, 1);
  auto step = [](const Action& a) {
    return [&a](int, std::uint64_t x, std::vector<std::uint64_t>& out) { a.successors(x, out); };
  };
  const Stmt& body = *s.children[0];
  Ctx silent = c;
  silent.report = false;
  Rel2 inv = p;
  for (;;) {
    Judgment j = check(body, compose(inv, step(a1)), silent);
    Rel2 next = unite(p, j.q);
    if (next == inv) break;
    inv = std::move(next);
  }
  if (s.invariant && c.report) {
    if (auto w = violates(inv, s.invariant)) {
      v_.fail("M-while", "loop invariant does not hold for every iteration", s.span, c.where, {show(*w)});
    }
  }
  const Effect e1 = component(a1, inv, s, c);
  const Effect e2 = component(a2, inv, s, c);
  Judgment j = check(body, compose(inv, step(a1)), c);
  const Effect iter = sequence(e1, j, body, c);
  const Effect it_star = star(iter);
  if (it_star == Effect::E && iter != Effect::E && c.report) {
    v_.fail("M-seq", "non-reducible sequence: loop iteration with effect " + std::string(name(iter)) +
                         " repeated",
            s.span, c.where, {"star(" + std::string(name(iter)) + ") = E"});
  }
  Judgment exit{Rel2{}, e2};
  Effect e = sequence(it_star, exit, s, c);
  Judgment out{compose(inv, step(a2)), e};
  if (e != Effect::E && leq(e, Effect::L)) {
    out.promoted = true;
    out.unpromoted = e;
    out.e = join(e, Effect::R);
  }
  return out;
}

Judgment ThreadCheck::yield(const Stmt& s, const Rel2& p, const Ctx& c) {
  if (c.report) {
    if (!c.guarantee) {
      if (!p.empty()) {
        v_.fail("M-yield", "yield in an atomic context: P does not imply the empty guarantee", s.span, c.where,
                {show(Rel2::unpack(p.keys().front()))});
      }
    } else if (auto w = violates(p, *c.guarantee)) {
      v_.fail("M-yield", "P does not imply G at yield", s.span, c.where, {show(*w)});
    }
  }
  return {yield_close(p, c.rely), Effect::Y};
}

Judgment ThreadCheck::call(const Stmt& s, const Rel2& p, const Ctx& c) {
  const FnDecl& f = *m_.program().find_fn(s.target);
  if (f.atomic) {
    if (c.report) {
      const Compiled& pre = compiled(f.requires_);
      Digits d;
      std::optional<std::uint64_t> bad;
      postof(p, m_.threads(), space_.size()).for_each([&](int, std::uint64_t x) {
        if (bad) return;
        space_.decode(x, d);
        if (!pre.holds(d, d)) bad = x;
      });
      if (bad) {
        v_.fail("M-call-atomic", "precondition of " + f.name + "() may not hold", s.span, c.where,
                {show(tid_, *bad)});
      }
    }
    auto& frame = calls_[f.name];
    if (!frame) {
      std::vector<int> free;
      for (const auto& i : v_.write_set(f, tid_)) free.push_back(space_.slot(i));
      frame = std::make_unique<Framed>(space_, tid_, f.ensures, std::move(free));
    }
    return {compose(p, frame->successors()), f.effect};
  }

  if (c.report) {
    for (auto k : p.keys()) {
      const Triple t = Rel2::unpack(k);
      if (t.pre != t.post) {
        v_.fail("M-call-non-atomic", "precondition of " + f.name + "() needs an empty reducible sequence (call after a yield)",
                s.span, c.where, {show(t)});
        break;
      }
    }
    if (auto w = violates(p, f.requires_)) {
      v_.fail("M-call-non-atomic", "precondition of " + f.name + "() may not hold", s.span, c.where, {show(*w)});
    }
    const RelSpec callee_r = v_.rel(f.relies);
    const RelSpec callee_g = v_.rel(f.guarantees);
    if (auto w = v_.counterexample(c.rely, tid_, callee_r, tid_, tid_)) {
      v_.fail("M-call-non-atomic", "caller rely is not contained in the rely of " + f.name + "()", s.span,
              c.where, {*w});
    }
    if (auto w = v_.counterexample(callee_g, tid_, c.guarantee, tid_, 0)) {
      v_.fail("M-call-non-atomic", "guarantee of " + f.name + "() is not contained in the caller guarantee",
              s.span, c.where, {*w});
    }
  }
  return {diag(f.ensures), Effect::R};
}

// ---- Verifier ---------------------------------------------------------------

ThreadCheck& Verifier::thread(int t) {
  auto& slot = threads_[t];
  if (!slot) slot = std::make_unique<ThreadCheck>(*this, t);
  return *slot;
}

std::vector<Instance> Verifier::write_set(const FnDecl& f, int tid) {
  std::vector<Instance> out;
  std::set<std::string> visited;
  auto inst = [&](const std::string& n) {
    const int v = m_.var_index(n);
    return Instance{v, m_.var(v).local ? tid : 0};
  };
  std::vector<const FnDecl*> work{&f};
  while (!work.empty()) {
    const FnDecl* g = work.back();
    work.pop_back();
    if (!visited.insert(g->name).second) continue;
    walk(*g->body, [&](const Stmt& s) {
      switch (s.kind) {
        case StmtKind::Assign:
        case StmtKind::UnstableRead:
        case StmtKind::Acquire:
        case StmtKind::Release: out.push_back(inst(s.target)); break;
        case StmtKind::If:
        case StmtKind::While:
          if (s.cond.kind == Cond::Kind::Cas) out.push_back(inst(s.cond.var));
          break;
        case StmtKind::Call:
          if (const FnDecl* h = m_.program().find_fn(s.target)) work.push_back(h);
          break;
        default: break;
      }
    });
  }
  return merge(out, {});
}

std::optional<std::string> Verifier::counterexample(const RelSpec& hyp, int th, const RelSpec& concl, int tc,
                                                    int fixed, bool diagonal) {
  if (!hyp) return std::nullopt;
  auto inst = merge(mentioned(m_, hyp->get(), th), concl ? mentioned(m_, concl->get(), tc) : std::vector<Instance>{});
  const StateSpace s(m_, inst);
  Budget::check(diagonal ? s.size() : s.size() * s.size(), "implication check");
  const Compiled h(s, th, *hyp);
  std::optional<Compiled> g;
  if (concl) g.emplace(s, tc, *concl);
  Digits a, b;
  for (std::uint64_t x = 0; x < s.size(); ++x) {
    s.decode(x, a);
    for (std::uint64_t y = diagonal ? x : 0; y < (diagonal ? x + 1 : s.size()); ++y) {
      s.decode(y, b);
      bool frame_ok = true;
      for (int k = 0; k < s.slots(); ++k)
        if (fixed != 0 && s.instances()[static_cast<std::size_t>(k)].tid == fixed &&
            a[static_cast<std::size_t>(k)] != b[static_cast<std::size_t>(k)])
          frame_ok = false;
      if (!frame_ok || !h.holds(a, b)) continue;
      if (g && g->holds(a, b)) continue;
      return "old {" + s.render(x) + "} now {" + s.render(y) + "}";
    }
  }
  return std::nullopt;
}

void Verifier::check_recursion() {
  const Program& p = m_.program();
  for (const auto& f : p.fns) {
    if (!f.atomic) continue;
    std::set<std::string> seen;
    std::vector<const FnDecl*> work;
    auto push_callees = [&](const FnDecl& g) {
      walk(*g.body, [&](const Stmt& s) {
        if (s.kind == StmtKind::Call)
          if (const FnDecl* h = p.find_fn(s.target)) work.push_back(h);
      });
    };
    push_callees(f);
    bool recursive = false;
    while (!work.empty()) {
      const FnDecl* g = work.back();
      work.pop_back();
      if (g->name == f.name) recursive = true;
      if (!seen.insert(g->name).second) continue;
      push_callees(*g);
    }
    if (recursive) fail("M-def-atomic", "atomic function " + f.name + "() is recursive", f.span, "function " + f.name, {"call graph cycle through " + f.name});
  }
}

void Verifier::check_function(const FnDecl& f) {
  FunctionVerdict verdict{f.name, f.atomic, f.atomic ? f.effect : Effect::R, Effect::B, true};
  const std::size_t failures_before = r_.failures.size();
  const std::string where = "function " + f.name;
  for (int t = 1; t <= m_.threads(); ++t) {
    ThreadCheck& tc = thread(t);
    Ctx c{where, std::nullopt, std::nullopt, true};
    if (!f.atomic) {
      c.rely = rel(f.relies);
      c.guarantee = rel(f.guarantees);
    }
    const Judgment j = tc.check(*f.body, tc.diag(f.requires_), c);
    verdict.computed = join(verdict.computed, j.e);
    if (f.atomic) {
      if (j.e != Effect::E && !leq(j.e, f.effect)) {
        fail("M-def-atomic", "body effect " + std::string(name(j.e)) + " exceeds the declared effect " +
                                 std::string(name(f.effect)),
             f.span, where, {"thread " + std::to_string(t) + ": computed " + std::string(name(j.e))});
      }
      if (auto w = tc.violates(j.q, f.ensures)) {
        fail("M-def-atomic", "postcondition of " + f.name + "() may not hold", f.span, where, {tc.show(*w)});
      }
    } else {
      if (j.e != Effect::E && !leq(j.e, Effect::R)) {
        fail("M-def-non-atomic", "body effect " + std::string(name(j.e)) + " is not below R (the body must end in a yield)",
             f.span, where, {"thread " + std::to_string(t) + ": computed " + std::string(name(j.e))});
      }
      for (auto k : j.q.keys()) {
        const Triple tr = Rel2::unpack(k);
        if (tr.pre != tr.post) {
          fail("M-def-non-atomic", "post-state of " + f.name + "() is not yield-closed", f.span, where, {tc.show(tr)});
          break;
        }
      }
      if (auto w = tc.violates(j.q, f.ensures)) {
        fail("M-def-non-atomic", "postcondition of " + f.name + "() may not hold", f.span, where, {tc.show(*w)});
      }
    }
  }
  if (!f.atomic) {
    bool nonempty = false;
    for (int t = 1; t <= m_.threads() && !nonempty; ++t)
      nonempty = counterexample(rel(f.guarantees), t, std::nullopt, t, 0).has_value();
    if (!nonempty) fail("M-def-non-atomic", "guarantee of " + f.name + "() is empty", f.span, where, {"no (t, σ, σ') satisfies it"});
  }
  verdict.verified = r_.failures.size() == failures_before;
  r_.functions.push_back(verdict);
}

void Verifier::check_thread(int t) {
  const Program& p = m_.program();
  const Stmt& body = *p.threads[static_cast<std::size_t>(t - 1)];
  const std::string where = "thread " + std::to_string(t);
  if (body.children.empty() || body.children.front()->kind != StmtKind::Yield) {
    fail("M-state", "thread " + std::to_string(t) + " does not start with yield", body.span, where,
         {"first statement: " + (body.children.empty() ? std::string("none") : print_head(*body.children.front()))});
  }
  ThreadCheck& tc = thread(t);
  const std::uint64_t s0 = tc.space().encode(tc.space().initial());
  const Rel2 p0 = Rel2::from_keys({Rel2::pack(t, s0, s0)});
  Ctx c{where, rel(p.relies), rel(p.guarantees), true};
  const Judgment j = tc.check(body, p0, c);
  if (auto w = tc.violates(j.q, rel(p.guarantees))) {
    fail("M-state", "final state of thread " + std::to_string(t) + " is not covered by the guarantee", body.span,
         where, {tc.show(*w)});
  }
}

void Verifier::check_state() {
  const Program& p = m_.program();
  const RelSpec g = rel(p.guarantees);
  const RelSpec r = rel(p.relies);
  for (int t = 1; t <= m_.threads(); ++t) {
    if (auto w = counterexample(RelSpec{nullptr}, t, g, t, 0, true)) {
      fail("M-state", "guarantee is not reflexive (I does not imply G)", p.guarantees ? p.guarantees->span : SourceSpan{p.file},
           "program", {"thread " + std::to_string(t) + ": " + *w});
      break;
    }
  }
  for (int t = 1; t <= m_.threads(); ++t)
    for (int u = 1; u <= m_.threads(); ++u) {
      if (t == u) continue;
      if (auto w = counterexample(g, t, r, u, u)) {
        fail("M-state", "guarantee of thread " + std::to_string(t) + " is not contained in the rely of thread " + std::to_string(u),
             p.guarantees ? p.guarantees->span : SourceSpan{p.file}, "program", {*w});
      }
    }
}

VerificationReport Verifier::run() {
  const auto start = std::chrono::steady_clock::now();
  const Program& p = m_.program();
  for (const auto& d : well_formed(p)) fail("well-formed", d.message, d.span, "program", {d.str()});
  if (!r_.failures.empty()) return std::move(r_);

  check_recursion();
  for (const auto& f : p.fns) check_function(f);
  for (int t = 1; t <= m_.threads(); ++t) check_thread(t);
  check_state();
  if (o_.validity) {
    r_.validity = check_validity(m_);
    // One failure per pair of syntactic actions, listing every failing condition.
    std::map<std::pair<int, int>, std::vector<const ValidityViolation*>> by_pair;
    for (const auto& v : r_.validity) by_pair[{v.a1.stmt->id * 2 + (v.a1.branch > 0), v.a2.stmt->id * 2 + (v.a2.branch > 0)}].push_back(&v);
    for (const auto& [key, vs] : by_pair) {
      std::set<int> conds;
      for (const auto* v : vs) conds.insert(v->condition);
      std::string list;
      for (int c : conds) list += (list.empty() ? "(" : ", (") + std::to_string(c) + ")";
      const ValidityViolation& v = *vs.front();
      fail("validity", "mover specification is not valid for " + v.a1.describe() + " against " + v.a2.describe() +
                           " at " + v.a2.span().str() + ": condition " + list + " fails",
           v.a1.span(), "program", {v.str()});
    }
  }
  for (auto& [id, e] : effects_) r_.effects.push_back(e);
  r_.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return std::move(r_);
}

}  // namespace

VerificationReport verify(const Model& m, const CheckOptions& o) { return Verifier(m, o).run(); }

}  // namespace mover

// SPDX-License-Identifier: Apache-2.0
#include "mover/explorer.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <deque>
#include <map>
#include <memory>
#include <unordered_map>

#include "mover/action.hpp"
#include "mover/mover.hpp"
#include "mover/parser.hpp"

namespace mover {

const char* name(Scheduler s) { return s == Scheduler::Preemptive ? "preemptive" : "nonpreemptive"; }

namespace {

enum Phase : std::uint8_t { kPre = 0, kPost = 1 };

struct ExecState {
  std::uint64_t store = 0;
  std::vector<std::vector<int>> k;  // per thread; back() is the next redex
  int running = 0;                  // nonpreemptive only
  std::vector<std::uint8_t> phase;  // instrumented only

  std::string key() const {
    std::string s(reinterpret_cast<const char*>(&store), sizeof store);
    s.push_back(static_cast<char>(running));
    for (std::size_t t = 0; t < k.size(); ++t) {
      const auto n = static_cast<std::uint32_t>(k[t].size());
      s.append(reinterpret_cast<const char*>(&n), sizeof n);
      s.append(reinterpret_cast<const char*>(k[t].data()), k[t].size() * sizeof(int));
      if (!phase.empty()) s.push_back(static_cast<char>(phase[t]));
    }
    return s;
  }
};

struct Move {
  TraceStep step;
  ExecState next;
  Effect effect = Effect::B;  // instrumented: effect of the fired action
  bool resets = false;        // a yield
};

class Machine {
 public:
  explicit Machine(const Model& m) : m_(m), p_(m.program()), space_(StateSpace::full(m, false)) {
    for (int t = 1; t <= m.threads(); ++t) tables_.emplace_back(space_, t);
  }

  const StateSpace& space() const { return space_; }

  ExecState initial(bool instrumented) const {
    ExecState s;
    s.store = space_.encode(space_.initial());
    for (const auto& body : p_.threads) {
      s.k.push_back({body->id});
      normalize(s.k.back());
    }
    if (instrumented) s.phase.assign(s.k.size(), kPre);
    return s;
  }

  static bool finished(const ExecState& s, int t) { return s.k[static_cast<std::size_t>(t - 1)].empty(); }

  bool all_finished(const ExecState& s) const {
    for (const auto& k : s.k)
      if (!k.empty()) return false;
    return true;
  }

  const Stmt* redex(const ExecState& s, int t) const {
    const auto& k = s.k[static_cast<std::size_t>(t - 1)];
    return k.empty() ? nullptr : p_.stmt(k.back());
  }

  bool wrong(const ExecState& s) const {
    for (int t = 1; t <= static_cast<int>(s.k.size()); ++t) {
      const Stmt* r = redex(s, t);
      if (r && r->kind == StmtKind::Wrong) return true;
    }
    return false;
  }

  /// Every move of thread t; empty when finished or blocked.
  void moves(const ExecState& s, int t, std::vector<Move>& out) {
    const Stmt* r = redex(s, t);
    if (!r) return;
    auto base = [&](const char* rule, int branch) {
      Move mv;
      mv.step = TraceStep{t, rule, r->id, branch, s.store, s.store};
      mv.next = s;
      mv.next.k[static_cast<std::size_t>(t - 1)].pop_back();
      return mv;
    };
    auto emit = [&](Move mv, std::uint64_t post, const std::vector<int>& push) {
      auto& k = mv.next.k[static_cast<std::size_t>(t - 1)];
      for (int id : push) k.push_back(id);
      normalize(k);
      mv.next.store = post;
      mv.step.after = post;
      out.push_back(std::move(mv));
    };
    switch (r->kind) {
      case StmtKind::Wrong: return;
      case StmtKind::Yield: {
        Move mv = base("E-yield", -1);
        mv.resets = true;
        emit(std::move(mv), s.store, {});
        return;
      }
      case StmtKind::Call: {
        const FnDecl* f = p_.find_fn(r->target);
        emit(base("E-call", -1), s.store, {f->body->id});
        return;
      }
      case StmtKind::If:
      case StmtKind::While:
        for (int b = 0; b < 2; ++b) {
          const Action& a = action(t, *r, b);
          posts_.clear();
          a.successors(s.store, posts_);
          const Effect e = posts_.empty() ? Effect::B : effect(t, a, s.store);
          std::vector<int> push;
          if (r->kind == StmtKind::If) push = {r->children[static_cast<std::size_t>(b)]->id};
          else if (b == 0) push = {r->id, r->children[0]->id};
          for (auto post : posts_) {
            Move mv = base(r->kind == StmtKind::If ? "E-if" : "E-while", b);
            mv.effect = e;
            emit(std::move(mv), post, push);
          }
        }
        return;
      default: {
        const Action& a = action(t, *r, -1);
        posts_.clear();
        a.successors(s.store, posts_);
        if (posts_.empty()) return;
        const Effect e = effect(t, a, s.store);
        for (auto post : posts_) {
          Move mv = base("E-action", -1);
          mv.effect = e;
          emit(std::move(mv), post, {});
        }
      }
    }
  }

 private:
  void normalize(std::vector<int>& k) const {
    while (!k.empty()) {
      const Stmt* s = p_.stmt(k.back());
      if (s->kind != StmtKind::Block) return;
      k.pop_back();
      for (auto it = s->children.rbegin(); it != s->children.rend(); ++it) k.push_back((*it)->id);
    }
  }

  const Action& action(int t, const Stmt& s, int branch) {
    const std::uint64_t key = (static_cast<std::uint64_t>(t) << 40) | (static_cast<std::uint64_t>(s.id) << 2) |
                              static_cast<std::uint64_t>(branch + 1);
    auto& slot = actions_[key];
    if (!slot) slot = std::make_unique<Action>(space_, t, ActionRef{&s, branch});
    return *slot;
  }

  Effect effect(int t, const Action& a, std::uint64_t store) const {
    return tables_[static_cast<std::size_t>(t - 1)].effect_of(a, store);
  }

  const Model& m_;
  const Program& p_;
  StateSpace space_;
  std::vector<MoverTable> tables_;
  std::unordered_map<std::uint64_t, std::unique_ptr<Action>> actions_;
  std::vector<std::uint64_t> posts_;
};

struct Node {
  std::uint32_t parent;
  TraceStep step;
};

Trace rebuild(const std::vector<Node>& nodes, std::uint32_t at, std::uint64_t end, bool wrong) {
  Trace tr;
  tr.end = end;
  tr.ends_wrong = wrong;
  while (at != 0) {
    tr.steps.push_back(nodes[at].step);
    at = nodes[at].parent;
  }
  std::reverse(tr.steps.begin(), tr.steps.end());
  return tr;
}

// Phase transition of the reducible-pattern automaton; nullopt is the error state.
std::optional<std::uint8_t> advance(std::uint8_t phase, Effect e) {
  switch (e) {
    case Effect::Y: return kPre;
    case Effect::B: return phase;
    case Effect::R: return phase == kPre ? std::optional<std::uint8_t>(kPre) : std::nullopt;
    case Effect::L: return kPost;
    case Effect::N: return phase == kPre ? std::optional<std::uint8_t>(kPost) : std::nullopt;
    case Effect::E: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

ExploreResult explore(const Model& m, const ExploreOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  Machine mc(m);
  ExploreResult res;
  res.scheduler = o.scheduler;
  const int n = m.threads();

  std::vector<ExecState> states;
  std::vector<Node> nodes;
  std::unordered_map<std::string, std::uint32_t> seen;
  std::set<std::tuple<int, int, std::string>> flagged;

  auto add = [&](ExecState s, std::uint32_t parent, const TraceStep& step) {
    auto [it, fresh] = seen.emplace(s.key(), static_cast<std::uint32_t>(states.size()));
    if (!fresh) return;
    Budget::check(states.size() + 1, "exploration states");
    states.push_back(std::move(s));
    nodes.push_back({parent, step});
  };
  add(mc.initial(o.instrumented), 0, {});

  std::vector<Move> mv;
  for (std::uint32_t i = 0; i < states.size(); ++i) {
    const ExecState cur = states[i];
    if (mc.wrong(cur)) {
      if (!res.wrong) {
        res.wrong = true;
        res.wrong_trace = rebuild(nodes, i, cur.store, true);
      }
      continue;
    }
    if (o.visit)
      for (int t = 1; t <= n; ++t)
        if (const Stmt* r = mc.redex(cur, t)) o.visit(t, r->id, cur.store, cur.running == t);
    if (mc.all_finished(cur)) {
      res.terminal.insert(cur.store);
      continue;
    }

    // Threads allowed to move: everyone, or only the running thread while it
    // is mid-sequence and able to step.
    std::vector<int> pick;
    if (o.scheduler == Scheduler::Nonpreemptive && cur.running != 0) {
      const Stmt* r = mc.redex(cur, cur.running);
      if (r && r->kind != StmtKind::Yield) {
        mv.clear();
        mc.moves(cur, cur.running, mv);
        if (!mv.empty()) pick = {cur.running};
      }
    }
    if (pick.empty())
      for (int t = 1; t <= n; ++t) pick.push_back(t);

    bool any = false;
    for (int t : pick) {
      mv.clear();
      mc.moves(cur, t, mv);
      for (auto& x : mv) {
        any = true;
        ++res.stats.transitions;
        if (o.scheduler == Scheduler::Nonpreemptive) x.next.running = t;
        if (o.instrumented) {
          auto& ph = x.next.phase[static_cast<std::size_t>(t - 1)];
          const Effect e = x.resets ? Effect::Y : x.effect;
          const auto nx = advance(ph, e);
          if (!nx) {
            const Stmt* s = m.program().stmt(x.step.stmt);
            std::string msg = e == Effect::E ? "action with effect E"
                                             : "effect " + std::string(name(e)) + " after the commit point";
            if (flagged.emplace(t, x.step.stmt, msg).second) {
              const ActionRef ref{s, x.step.branch};
              res.flags.push_back({t, x.step.stmt, s->span, ref.describe(), e, msg});
            }
          } else {
            ph = *nx;
          }
        }
        add(std::move(x.next), i, x.step);
      }
    }
    if (!any) {
      ++res.deadlocks;
      if (!res.deadlock_trace) res.deadlock_trace = rebuild(nodes, i, cur.store, false);
    }
  }
  res.stats.states = states.size();
  res.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

Comparison compare_schedulers(const Model& m) {
  Comparison c;
  c.preemptive = explore(m, {Scheduler::Preemptive, false, {}});
  c.nonpreemptive = explore(m, {Scheduler::Nonpreemptive, false, {}});
  const StateSpace space = StateSpace::full(m, false);
  auto only = [&](const std::set<std::uint64_t>& a, const std::set<std::uint64_t>& b, const char* which) {
    std::uint64_t count = 0;
    std::uint64_t example = 0;
    for (auto s : a)
      if (!b.count(s) && count++ == 0) example = s;
    if (count)
      c.differences.push_back(std::to_string(count) + " terminal store(s) only under " + which + ", e.g. {" +
                              space.render(example) + "}");
  };
  only(c.preemptive.terminal, c.nonpreemptive.terminal, "preemptive");
  only(c.nonpreemptive.terminal, c.preemptive.terminal, "nonpreemptive");
  if (c.preemptive.wrong != c.nonpreemptive.wrong)
    c.differences.push_back(std::string("wrong is reachable only under ") +
                            (c.preemptive.wrong ? "preemptive" : "nonpreemptive"));
  if ((c.preemptive.deadlocks > 0) != (c.nonpreemptive.deadlocks > 0))
    c.differences.push_back(std::string("deadlock is reachable only under ") +
                            (c.preemptive.deadlocks ? "preemptive" : "nonpreemptive"));
  c.equivalent = c.differences.empty();
  return c;
}

ReplayResult replay(const Model& m, const Trace& t) {
  Machine mc(m);
  ExecState cur = mc.initial(false);
  std::vector<Move> mv;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const TraceStep& want = t.steps[i];
    if (want.tid < 1 || want.tid > m.threads())
      return {false, "step " + std::to_string(i + 1) + ": no thread " + std::to_string(want.tid)};
    if (want.before != cur.store) return {false, "step " + std::to_string(i + 1) + ": store differs before the step"};
    mv.clear();
    mc.moves(cur, want.tid, mv);
    bool found = false;
    for (auto& x : mv) {
      if (x.step.rule == want.rule && x.step.stmt == want.stmt && x.step.branch == want.branch &&
          x.step.after == want.after) {
        cur = std::move(x.next);
        found = true;
        break;
      }
    }
    if (!found) return {false, "step " + std::to_string(i + 1) + ": thread " + std::to_string(want.tid) +
                                   " cannot take " + want.rule + " at statement " + std::to_string(want.stmt)};
  }
  if (cur.store != t.end) return {false, "final store differs"};
  if (mc.wrong(cur) != t.ends_wrong)
    return {false, t.ends_wrong ? "trace does not end about to go wrong" : "trace ends about to go wrong"};
  return {true, {}};
}

std::string dump(const Model& m, const Trace& t) {
  const StateSpace space = StateSpace::full(m, false);
  std::string out;
  for (const auto& s : t.steps) {
    const Stmt* st = m.program().stmt(s.stmt);
    const std::string text = s.branch >= 0 ? ActionRef{st, s.branch}.describe() : print_head(*st);
    out += std::to_string(s.tid) + " | " + s.rule + " | " + st->span.str() + " " + text + " | " +
           space.delta(s.before, s.after) + "\n";
  }
  if (t.ends_wrong) out += "wrong: {" + space.render(t.end) + "}\n";
  return out;
}

}  // namespace mover

// SPDX-License-Identifier: Apache-2.0
#include "mover/mover.hpp"

#include <algorithm>

namespace mover {

MoverTable::MoverTable(const StateSpace& space, int tid)
    : space_(&space),
      tid_(tid),
      read_(static_cast<std::size_t>(space.model().var_count())),
      write_(static_cast<std::size_t>(space.model().var_count())) {}

const std::vector<MoverTable::Clause>& MoverTable::clauses(int var, Access which) const {
  auto& slot = (which == Access::Read ? read_ : write_)[static_cast<std::size_t>(var)];
  if (!slot) {
    slot.emplace();
    for (const auto& c : space_->model().var(var).clauses)
      if (c.access == which) slot->push_back({c.effect, Compiled(*space_, tid_, c.condition)});
  }
  return *slot;
}

Effect MoverTable::effect_of(const Action& a, std::uint64_t index) const {
  Digits d;
  space_->decode(index, d);
  return effect_of(a, d, index);
}

Effect MoverTable::effect_of(const Action& a, const Digits& d, std::uint64_t index) const {
  const ActionAccess& acc = a.access();
  if (acc.kind == AccessKind::LocalOnly) return Effect::B;
  std::vector<std::uint64_t> posts;
  a.successors(d, index, posts);
  if (posts.empty()) return Effect::B;
  if (acc.kind == AccessKind::GlobalRead) {
    for (const auto& c : clauses(acc.var, Access::Read))
      if (c.condition.holds(d, d)) return c.effect;
    return Effect::E;
  }
  Effect e = Effect::B;
  Digits post;
  for (auto p : posts) {
    space_->decode(p, post);
    Effect here = Effect::E;
    for (const auto& c : clauses(acc.var, Access::Write)) {
      if (c.condition.holds(d, post)) {
        here = c.effect;
        break;
      }
    }
    e = join(e, here);
  }
  return e;
}

EffectOver effect_over(const Action& a, const MoverTable& m, const Rel1& posts) {
  EffectOver r;
  Digits d;
  posts.for_each([&](int tid, std::uint64_t s) {
    if (tid != a.tid() || r.effect == Effect::E) return;
    a.space().decode(s, d);
    const Effect e = m.effect_of(a, d, s);
    const Effect j = join(r.effect, e);
    if (!r.witness || j != r.effect) r.witness = {tid, s};
    r.effect = j;
  });
  return r;
}

EffectOver effect_over(const Action& a, const MoverTable& m, const Rel2& p) {
  return effect_over(a, m, postof(p, a.space().model().threads(), a.space().size()));
}

std::string ValidityViolation::str() const {
  return "validity condition (" + std::to_string(condition) + ") fails for " + a1.describe() +
         " [" + a1.span().str() + "] by thread " + std::to_string(t) + " against " +
         a2.describe() + " [" + a2.span().str() + "] by thread " + std::to_string(u) + ": " +
         stores;
}

std::vector<Instance> clause_instances(const Model& m, const ActionRef& a, int tid) {
  const ActionAccess acc = classify(m, a);
  std::vector<Instance> out;
  if (acc.kind == AccessKind::LocalOnly) return out;
  const Access which = acc.kind == AccessKind::GlobalRead ? Access::Read : Access::Write;
  for (const auto& c : m.var(acc.var).clauses)
    if (c.access == which) out = merge(out, mentioned(m, c.condition.get(), tid));
  return out;
}

namespace {

bool intersects(const std::vector<Instance>& a, const std::vector<Instance>& b) {
  for (const auto& x : a)
    if (std::find(b.begin(), b.end(), x) != b.end()) return true;
  return false;
}

bool contains(const std::vector<std::uint64_t>& v, std::uint64_t x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

// Checks the four conditions for one action pair and thread pair over `space`.
void check_pair(const StateSpace& space, const ActionRef& r1, const ActionRef& r2, int t, int u,
                std::vector<ValidityViolation>& out) {
  const Action a1(space, t, r1), a2(space, u, r2);
  const MoverTable mt(space, t), mu(space, u);
  bool found[5] = {};
  auto report = [&](int cond, std::string stores) {
    if (found[cond]) return;
    found[cond] = true;
    out.push_back({cond, r1, r2, t, u, std::move(stores)});
  };
  auto show = [&](const char* n, std::uint64_t s) { return std::string(n) + " = {" + space.render(s) + "}"; };

  Digits d, d1;
  std::vector<std::uint64_t> s1, s2, s2_at_post, tmp;
  for (std::uint64_t sigma = 0; sigma < space.size(); ++sigma) {
    space.decode(sigma, d);
    const Effect e1 = mt.effect_of(a1, d, sigma);
    if (!leq(e1, Effect::N)) continue;
    s1.clear();
    a1.successors(d, sigma, s1);
    if (s1.empty()) continue;
    s2.clear();
    a2.successors(d, sigma, s2);
    const Effect e2_pre = mu.effect_of(a2, d, sigma);

    // any σ''' with (u,σ,σ''') ∈ A2 and (t,σ''',target) ∈ A1
    auto swap_exists = [&](std::uint64_t target) {
      for (auto mid : s2) {
        tmp.clear();
        a1.successors(mid, tmp);
        if (contains(tmp, target)) return true;
      }
      return false;
    };

    for (auto post : s1) {
      space.decode(post, d1);
      s2_at_post.clear();
      a2.successors(d1, post, s2_at_post);
      const Effect e2_post = mu.effect_of(a2, d1, post);
      // (1) and (2): A1 then A2 can be reordered.
      const bool c1 = leq(e1, Effect::R) && leq(e2_post, Effect::N);
      const bool c2 = leq(e2_post, Effect::L);
      if (c1 || c2) {
        for (auto fin : s2_at_post) {
          if (swap_exists(fin)) continue;
          const std::string w = show("σ", sigma) + ", " + show("σ'", post) + ", " + show("σ''", fin);
          if (c1) report(1, w);
          if (c2) report(2, w);
        }
      }
      // (3): A1 does not change the effect of A2 where A2 can run before and after.
      if (!s2.empty() && !s2_at_post.empty() && e2_pre != e2_post) {
        report(3, show("σ", sigma) + ", " + show("σ'", post) + ": effect " +
                      std::string(name(e2_pre)) + " becomes " + std::string(name(e2_post)));
      }
      // (4): A1 does not disable a left-moving A2.
      if (leq(e2_pre, Effect::L)) {
        for (auto fin : s2) {
          tmp.clear();
          a1.successors(fin, tmp);
          bool ok = false;
          for (auto x : tmp) ok = ok || contains(s2_at_post, x);
          if (!ok) report(4, show("σ", sigma) + ", " + show("σ'", post) + ", " + show("σ''", fin));
        }
      }
    }
  }
}

}  // namespace

std::vector<ValidityViolation> check_validity(const Model& m, const ValidityOptions& o) {
  std::vector<ValidityViolation> out;
  const auto actions = program_actions(m.program());
  const int n = m.threads();
  std::optional<StateSpace> full;
  if (!o.project) full.emplace(StateSpace::full(m));
  for (const auto& r1 : actions) {
    for (const auto& r2 : actions) {
      const bool local1 = classify(m, r1).kind == AccessKind::LocalOnly;
      const bool local2 = classify(m, r2).kind == AccessKind::LocalOnly;
      for (int t = 1; t <= n; ++t) {
        for (int u = 1; u <= n; ++u) {
          if (t == u) continue;
          if (o.skip_independent && local1 && local2) continue;
          const Footprint f1 = footprint(m, r1, t), f2 = footprint(m, r2, u);
          const auto c1 = clause_instances(m, r1, t), c2 = clause_instances(m, r2, u);
          if (o.skip_independent) {
            const auto touch1 = merge(merge(f1.reads, f1.writes), c1);
            const auto touch2 = merge(merge(f2.reads, f2.writes), c2);
            if (!intersects(f1.writes, touch2) && !intersects(f2.writes, touch1)) continue;
          }
          if (o.project) {
            auto inst = merge(merge(merge(f1.reads, f1.writes), merge(f2.reads, f2.writes)),
                              merge(c1, c2));
            check_pair(StateSpace(m, std::move(inst)), r1, r2, t, u, out);
          } else {
            check_pair(*full, r1, r2, t, u, out);
          }
          if (o.limit && out.size() >= o.limit) return out;
        }
      }
    }
  }
  return out;
}

}  // namespace mover

// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <set>
#include <tuple>

#include "mover/mover.hpp"
#include "test_support.hpp"

using namespace mover;
using testing::action;

namespace {

const char* kLockOnly = R"(
bits 2;
int x both-mover if m == tid;
lock m write right-mover if old(m) == 0 && m == tid write left-mover if old(m) == tid && m == 0;
local int t;
init { x = 0; m = 0; }
thread { yield; acquire(m); t = x; x = t + 1; release(m); }
thread { yield; acquire(m); t = x; x = t + 1; release(m); }
)";

const char* kRacy = R"(
bits 2;
int x both-mover if true;
local int t;
init { x = 0; }
thread { yield; t = x; x = t + 1; }
thread { yield; t = x; x = t + 1; }
)";

std::uint64_t store(const StateSpace& s, std::initializer_list<std::pair<const char*, std::int64_t>> vals) {
  Digits d = s.initial();
  for (auto [name, v] : vals) {
    const int var = s.model().var_index(name);
    for (int k = 0; k < s.slots(); ++k)
      if (s.instances()[static_cast<std::size_t>(k)].var == var)
        d[static_cast<std::size_t>(k)] = static_cast<std::int32_t>(*s.model().encode(s.domain(k), Value::integer(v)));
  }
  return s.encode(d);
}

}  // namespace

TEST_CASE("effect of lock-protected accesses") {
  const Program p = testing::parse_ok(kLockOnly);
  const Model m(p);
  const StateSpace s = StateSpace::full(m);
  const MoverTable mt(s, 1);
  const Action write(s, 1, action(p, "x = t + 1;"));
  CHECK(mt.effect_of(write, store(s, {{"m", 1}})) == Effect::B);
  CHECK(mt.effect_of(write, store(s, {{"m", 0}})) == Effect::E);
  CHECK(mt.effect_of(write, store(s, {{"m", 2}})) == Effect::E);
  const Action acq(s, 1, action(p, "acquire(m);"));
  const Action rel(s, 1, action(p, "release(m);"));
  CHECK(mt.effect_of(acq, store(s, {{"m", 0}})) == Effect::R);
  CHECK(mt.effect_of(rel, store(s, {{"m", 1}})) == Effect::L);
  // a blocked acquire performs no access
  CHECK(mt.effect_of(acq, store(s, {{"m", 2}})) == Effect::B);
  // release of a lock held by someone else matches no clause
  CHECK(mt.effect_of(rel, store(s, {{"m", 2}})) == Effect::E);
  const Action local(s, 1, action(p, "t = x;"));
  CHECK(mt.effect_of(local, store(s, {{"m", 1}})) == Effect::B);
}

TEST_CASE("effect over a precondition joins the per-store effects") {
  const Program p = testing::parse_ok(kLockOnly);
  const Model m(p);
  const StateSpace s = StateSpace::full(m);
  const MoverTable mt(s, 1);
  const Action write(s, 1, action(p, "x = t + 1;"));
  Rel1 held(m.threads(), s.size()), any(m.threads(), s.size());
  held.insert(1, store(s, {{"m", 1}}));
  any = held;
  CHECK(effect_over(write, mt, held).effect == Effect::B);
  any.insert(1, store(s, {{"m", 0}}));
  const auto over = effect_over(write, mt, any);
  CHECK(over.effect == Effect::E);
  REQUIRE(over.witness);
  CHECK(over.witness->second == store(s, {{"m", 0}}));
  CHECK(effect_over(write, mt, Rel1(m.threads(), s.size())).effect == Effect::B);
}

TEST_CASE("lock discipline is a valid mover specification") {
  const Program p = testing::parse_ok(kLockOnly);
  const Model m(p);
  const auto v = check_validity(m);
  for (const auto& x : v) MESSAGE(x.str());
  CHECK(v.empty());
  CHECK(check_validity(m, {.project = false, .skip_independent = false}).empty());
}

TEST_CASE("unsynchronized both-mover writes violate commutativity") {
  const Program p = testing::parse_ok(kRacy);
  const Model m(p);
  const auto v = check_validity(m);
  REQUIRE_FALSE(v.empty());
  bool commute = false;
  for (const auto& x : v) commute = commute || x.condition == 1 || x.condition == 3;
  CHECK(commute);
  CHECK(v.front().stores.find("σ''") != std::string::npos);
}

TEST_CASE("projected validity agrees with the literal full-space check") {
  for (const char* src : {kLockOnly, kRacy}) {
    const Program p = testing::parse_ok(src);
    const Model m(p);
    auto key = [](const std::vector<ValidityViolation>& vs) {
      std::set<std::tuple<int, int, int, int, int>> k;
      for (const auto& x : vs) k.insert({x.condition, x.a1.stmt->id * 2 + x.a1.branch, x.a2.stmt->id * 2 + x.a2.branch, x.t, x.u});
      return k;
    };
    const auto fast = key(check_validity(m));
    const auto literal = key(check_validity(m, {.project = false, .skip_independent = false}));
    CHECK(fast == literal);
  }
}

TEST_CASE("a single thread is vacuously valid") {
  const Program p = testing::parse_ok("int x non-mover if false; init { } thread { yield; x = 1; }");
  CHECK(check_validity(Model(p)).empty());
}

// SPDX-License-Identifier: Apache-2.0
#include "mover/checker.hpp"

#include <iostream>

#include "mover/parser.hpp"
#include "test_support.hpp"

using namespace mover;

namespace {

const FnDecl& fn(const Program& p, const std::string& name) {
  const FnDecl* f = p.find_fn(name);
  REQUIRE(f != nullptr);
  return *f;
}

// Effects of the top-level statements of a function body.
std::string body_effects(const VerificationReport& r, const FnDecl& f) {
  std::string out;
  for (const auto& s : f.body->children) {
    const StmtEffect* e = r.effect_at(s->id);
    if (!out.empty()) out += ' ';
    out += e ? name(e->effect) : "?";
  }
  return out;
}

void dump(const VerificationReport& r) {
  for (const auto& f : r.failures) MESSAGE(f.str());
}

VerificationReport check(const Program& p, const CheckOptions& o = {}) {
  const Model m(p);
  return verify(m, o);
}

const Failure* first(const VerificationReport& r, const std::string& rule) {
  for (const auto& f : r.failures)
    if (f.rule == rule) return &f;
  return nullptr;
}

}  // namespace

TEST_CASE("counter verifies with add() effects R B B B L B") {
  const Program p = testing::load("counter.mvl");
  const Model m(p);
  const auto r = verify(m);
  dump(r);
  CHECK(r.verified());
  CHECK(body_effects(r, fn(p, "add")) == "R B B B L B");
  for (const auto& f : r.functions)
    if (f.name == "add") CHECK(f.computed == Effect::N);
}

TEST_CASE("counter client effects are grouped by yields") {
  const Program p = testing::load("counter.mvl");
  const auto r = check(p);
  CHECK(body_effects(r, fn(p, "client")) == "B N B Y B N B Y");
  for (const auto& f : r.functions)
    if (f.name == "client") CHECK(f.computed == Effect::R);
}

TEST_CASE("broken-invariant counter keeps the same postcondition") {
  const Program a = testing::load("counter.mvl");
  const Program b = testing::load("counter_broken.mvl");
  CHECK(print(*fn(a, "add").ensures) == print(*fn(b, "add").ensures));
  const auto r = check(b);
  dump(r);
  CHECK(r.verified());
}

TEST_CASE("spin lock functions are atomic movers") {
  const Program p = testing::load("spinlock.mvl");
  const auto r = check(p);
  dump(r);
  REQUIRE(r.verified());
  for (const auto& f : r.functions) {
    if (f.name == "spin_lock") CHECK(f.computed == Effect::R);
    if (f.name == "spin_unlock") CHECK(f.computed == Effect::L);
  }
  CHECK(fn(p, "spin_lock").effect == Effect::R);
  CHECK(fn(p, "spin_unlock").effect == Effect::L);
  CHECK(body_effects(r, fn(p, "add")) == "R B B B L B");

  const Program lock = testing::load("counter.mvl");
  CHECK(print(*fn(p, "add").requires_) == print(*fn(lock, "add").requires_));
  CHECK(print(*fn(p, "add").ensures) == print(*fn(lock, "add").ensures));
}

TEST_CASE("queue: unstable reads are right-movers, cas success is a non-mover") {
  const Program p = testing::load("queue.mvl");
  const auto r = check(p);
  dump(r);
  REQUIRE(r.verified());
  CHECK(print(*fn(p, "dequeue").ensures) == "result == old(buf) && buf == None");

  const Model m(p);
  const StateSpace s = StateSpace::thread(m, 2);
  const MoverTable mt(s, 2);
  const std::uint64_t init = s.encode(s.initial());  // buf == None == result
  CHECK(mt.effect_of(Action(s, 2, testing::action(p, "result ~= buf;")), init) == Effect::R);
  CHECK(mt.effect_of(Action(s, 2, testing::action(p, "cas(buf, result, None) fails")), init) == Effect::B);
  CHECK(mt.effect_of(Action(s, 2, testing::action(p, "cas(buf, result, None) succeeds")), init) == Effect::N);
}

TEST_CASE("stack push and pop verify at list depth 3") {
  const Program p = testing::load("stack.mvl");
  const Model m(p);
  CHECK(m.list_depth() == 3);
  CHECK(p.thread_count() == 2);
  CHECK(print(*fn(p, "push").ensures) == "head(top) == v && tail(top) == old(top)");
  CHECK(print(*fn(p, "pop").ensures) == "head(old(top)) == result && tail(old(top)) == top");
  const auto r = verify(m);
  dump(r);
  CHECK(r.verified());
}

TEST_CASE("mutation: add without acquire has effect E at the write") {
  const auto r = check(testing::load("counter_noacquire.mvl"));
  bool write = false;
  for (const auto& f : r.failures) {
    if (f.rule == "M-action" && f.message.find("effect E at x = t;") != std::string::npos) {
      write = true;
      CHECK(!f.witness.empty());
    }
  }
  CHECK(write);
}

TEST_CASE("mutation: odd increment breaks P => G at a yield") {
  const auto r = check(testing::load("odd_add.mvl"));
  const Failure* f = first(r, "M-yield");
  REQUIRE(f != nullptr);
  REQUIRE(!f->witness.empty());
  CHECK(f->witness.front().find("now {x=-7") != std::string::npos);
}

TEST_CASE("mutation: missing middle yield is a non-reducible sequence") {
  const auto r = check(testing::load("no_middle_yield.mvl"));
  const Failure* f = first(r, "M-seq");
  REQUIRE(f != nullptr);
  CHECK(f->message.find("non-reducible") != std::string::npos);
  CHECK(!f->witness.empty());
}

TEST_CASE("mutation: a loop after the commit point must terminate") {
  const auto r = check(testing::load("loop_after_commit.mvl"));
  const Failure* f = first(r, "M-while");
  REQUIRE(f != nullptr);
  CHECK(f->message.find("left-mover termination") != std::string::npos);
  CHECK(!f->witness.empty());
}

TEST_CASE("mutation: racy both-mover violates validity") {
  const auto r = check(testing::load("bad_spec_racy_bothmover.mvl"));
  const Failure* f = first(r, "validity");
  REQUIRE(f != nullptr);
  const bool one_or_three =
      f->message.find("(1)") != std::string::npos || f->message.find("(3)") != std::string::npos;
  CHECK(one_or_three);
  CHECK(f->witness.front().find("σ'' = {") != std::string::npos);
}

TEST_CASE("yield inside an atomic function fails against the empty guarantee") {
  const Program p = testing::parse_ok(R"(
bits 2;
int x non-mover;
atomic requires true ensures true f() { x = 1; yield; }
init { x = 0; }
thread { yield; f(); yield; }
)");
  const auto r = check(p);
  CHECK(r.has("M-yield"));
}

TEST_CASE("atomic functions may not recurse") {
  const Program p = testing::parse_ok(R"(
bits 2;
int x both-mover if true;
atomic requires true ensures true f() { g(); }
atomic requires true ensures true g() { f(); }
init { x = 0; }
thread { yield; }
)");
  const auto r = check(p);
  CHECK(r.has("M-def-atomic"));
}

TEST_CASE("a non-atomic body must end in a yield") {
  const Program p = testing::parse_ok(R"(
bits 2;
int x non-mover;
relies true guarantees true requires true ensures true
f() { x = 1; }
init { x = 0; }
thread { yield; f(); yield; }
)");
  const auto r = check(p);
  const Failure* f = first(r, "M-def-non-atomic");
  REQUIRE(f != nullptr);
  CHECK(f->message.find("effect N") != std::string::npos);
}

TEST_CASE("declared atomic effect bounds the body") {
  const Program p = testing::parse_ok(R"(
bits 2;
int x non-mover;
atomic right-mover requires true ensures true f() { x = 1; }
init { x = 0; }
thread { yield; f(); yield; }
)");
  const auto r = check(p);
  const Failure* f = first(r, "M-def-atomic");
  REQUIRE(f != nullptr);
  CHECK(f->message.find("exceeds the declared effect R") != std::string::npos);
}

TEST_CASE("guarantee of one thread must be relied on by the other") {
  const Program p = testing::parse_ok(R"(
bits 2;
int x both-mover if true;
init { x = 0; }
relies x == old(x);
guarantees true;
thread { yield; x = 1; yield; }
thread { yield; }
)");
  const auto r = check(p);
  bool cross = false;
  for (const auto& f : r.failures)
    cross |= f.rule == "M-state" && f.message.find("not contained in the rely") != std::string::npos;
  CHECK(cross);
}

TEST_CASE("threads must start with a yield") {
  const Program p = testing::parse_ok(R"(
bits 2;
int x both-mover if true;
init { x = 0; }
thread { x = 1; yield; }
)");
  CHECK(check(p).has("M-state"));
}

TEST_CASE("left-mover totality: global versus reachable stores") {
  // Acquire as a left-mover blocks where the lock is held, but this thread
  // only ever reaches it with the lock free.
  const char* text = R"(
bits 2;
lock m write left-mover if true;
init { m = 0; }
relies m == old(m);
thread { yield; acquire(m); yield; }
)";
  const Program p = testing::parse_ok(text);
  const auto global = check(p);
  const Failure* f = first(global, "M-action");
  REQUIRE(f != nullptr);
  CHECK(f->message.find("left-mover totality") != std::string::npos);
  CheckOptions o;
  o.totality = Totality::Reachable;
  const auto r = check(p, o);
  dump(r);
  CHECK(!r.has("M-action"));
}

TEST_CASE("every failure carries a witness") {
  for (const char* name : {"counter_noacquire.mvl", "odd_add.mvl", "no_middle_yield.mvl", "loop_after_commit.mvl",
                           "bad_spec_racy_bothmover.mvl", "racy_assert.mvl"}) {
    const auto r = check(testing::load(name));
    CHECK_MESSAGE(!r.verified(), name);
    for (const auto& f : r.failures) CHECK_MESSAGE(!f.witness.empty(), f.str());
  }
}

TEST_CASE("effects are deterministic across runs") {
  const Program p = testing::load("spinlock.mvl");
  const auto a = check(p);
  const auto b = check(p);
  REQUIRE(a.effects.size() == b.effects.size());
  for (std::size_t i = 0; i < a.effects.size(); ++i) CHECK(a.effects[i].effect == b.effects[i].effect);
}

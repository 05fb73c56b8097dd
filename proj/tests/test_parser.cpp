// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "mover/parser.hpp"
#include "test_support.hpp"

using namespace mover;
using testing::first_error;
using testing::parse_ok;

namespace {

const char* kSmall = R"(
int x both-mover if m == tid;
lock m write right-mover if old(m) == 0 && m == tid write left-mover if old(m) == tid && m == 0;
local int t;
init { x = 0; m = 0; }
thread { yield; acquire(m); t = x; x = t + 1; release(m); }
)";

ExprPtr parse_formula(const std::string& f) {
  auto p = parse_ok("int x; int y; local int t; init { } thread { assert " + f + "; }");
  return p.threads[0]->children[0]->cond.test;
}

}  // namespace

TEST_CASE("declarations, clauses and statements are parsed") {
  Program p = parse_ok(kSmall);
  REQUIRE(p.vars.size() == 3);
  CHECK(p.vars[0].name == "x");
  // an access-less clause stands for a read clause and a write clause
  REQUIRE(p.vars[0].clauses.size() == 2);
  CHECK(p.vars[0].clauses[0].access == Access::Read);
  CHECK(p.vars[0].clauses[1].access == Access::Write);
  CHECK(p.vars[0].clauses[0].effect == Effect::B);
  CHECK(p.vars[1].type == TypeKind::Lock);
  REQUIRE(p.vars[1].clauses.size() == 2);
  CHECK(p.vars[1].clauses[0].effect == Effect::R);
  CHECK(p.vars[1].clauses[1].effect == Effect::L);
  CHECK(p.vars[2].local);
  REQUIRE(p.thread_count() == 1);
  const auto& body = p.threads[0]->children;
  REQUIRE(body.size() == 5);
  CHECK(body[0]->kind == StmtKind::Yield);
  CHECK(body[1]->kind == StmtKind::Acquire);
  CHECK(body[2]->kind == StmtKind::Assign);
  CHECK(body[4]->kind == StmtKind::Release);
  CHECK(body[2]->span.line == 6);
}

TEST_CASE("canonical printing round-trips") {
  Program p = parse_ok(kSmall);
  const std::string text = print(p);
  Program q = parse_ok(text);
  CHECK(same(p, q));
  CHECK(print(q) == text);
}

TEST_CASE("corpus programs round-trip") {
  for (const char* name :
       {"counter.mvl", "counter_broken.mvl", "counter_noacquire.mvl", "odd_add.mvl", "no_middle_yield.mvl",
        "loop_after_commit.mvl", "bad_spec_racy_bothmover.mvl", "racy_assert.mvl", "single_thread.mvl", "spinlock.mvl",
        "queue.mvl", "stack.mvl"}) {
    CAPTURE(name);
    Program p = testing::load(name);
    Program q = parse_ok(print(p));
    CHECK(same(p, q));
    CHECK(print(q) == print(p));
  }
}

TEST_CASE("operator precedence") {
  CHECK(print(*parse_formula("x + y * 2 == 3 && !even(x) || y < 0")) ==
        "x + y * 2 == 3 && !even(x) || y < 0");
  CHECK(print(*parse_formula("(x + y) * 2 == 3")) == "(x + y) * 2 == 3");
  CHECK(print(*parse_formula("x == 1 ==> y == 2 ==> t == 3")) == "x == 1 ==> y == 2 ==> t == 3");
  CHECK(print(*parse_formula("(x == 1 ==> y == 2) ==> t == 3")) ==
        "(x == 1 ==> y == 2) ==> t == 3");
  CHECK(print(*parse_formula("x - (y - 1) == -3")) == "x - (y - 1) == -3");
  auto e = parse_formula("head(1 :: 2 :: Nil) == old(x)");
  CHECK(print(*e) == "head(1 :: 2 :: Nil) == old(x)");
  CHECK(e->args[0]->args[0]->op == Op::Cons);
}

TEST_CASE("assert desugars to a conditional with a wrong branch") {
  Program p = parse_ok("int x; init { } thread { assert x == 0; }");
  const Stmt& s = *p.threads[0]->children[0];
  CHECK(s.kind == StmtKind::If);
  CHECK(s.from_assert);
  CHECK(s.children[0]->children[0]->kind == StmtKind::Skip);
  CHECK(s.children[1]->children[0]->kind == StmtKind::Wrong);
  CHECK(print(p).find("assert x == 0;") != std::string::npos);
}

TEST_CASE("cas conditions and functions") {
  Program p = parse_ok(R"(
int l read right-mover write non-mover;
atomic right-mover requires true ensures l == tid lk() { while (!cas(l, 0, tid)) { skip; } }
relies true guarantees true requires true ensures true f() { lk(); yield; }
init { l = 0; }
thread { yield; f(); }
)");
  REQUIRE(p.fns.size() == 2);
  CHECK(p.fns[0].atomic);
  CHECK(p.fns[0].effect == Effect::R);
  CHECK_FALSE(p.fns[1].atomic);
  const Stmt& w = *p.fns[0].body->children[0];
  CHECK(w.kind == StmtKind::While);
  CHECK(w.cond.kind == Cond::Kind::Cas);
  CHECK(w.cond.negated);
  CHECK(same(p, parse_ok(print(p))));
}

TEST_CASE("errors carry a location and a message") {
  CHECK(first_error("") .find("empty program") != std::string::npos);
  CHECK(first_error("int x; init { } thread { x = 1; ").find("unterminated block") !=
        std::string::npos);
  const std::string bad = first_error("int x sideways-mover; init { } thread { }");
  CHECK(bad.find("bad.mvl:1:") == 0);
  CHECK(bad.find("mover clause") != std::string::npos);
}

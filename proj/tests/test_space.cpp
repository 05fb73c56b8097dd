// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "mover/eval.hpp"
#include "mover/space.hpp"
#include "test_support.hpp"

using namespace mover;

namespace {

Value eval_in(const StateSpace& s, int tid, const std::string& f, const Digits& pre, const Digits& post) {
  auto p = testing::parse_ok("int x; lock m; list int l; optional int o; local int n; init { } thread { assert " +
                             f + "; }");
  return Compiled(s, tid, p.threads[0]->children[0]->cond.test).eval(pre.data(), post.data());
}

}  // namespace

TEST_CASE("store counts are the product of the domain sizes") {
  const Program p = testing::load("counter.mvl");
  const Model m(p);
  CHECK(m.bits() == 4);
  // x: 16, m: 3, and n, t, u per thread: 16 each
  const std::uint64_t per_thread = 16ull * 3 * 16 * 16 * 16;
  CHECK(StateSpace::thread(m, 1).size() == per_thread);
  {
    ScopedBudget big(std::uint64_t{1} << 40);
    CHECK(StateSpace::full(m).size() == per_thread * 16 * 16 * 16);
  }
  try {
    StateSpace::full(m);
    FAIL("expected budget error");
  } catch (const BudgetExceeded& e) {
    CHECK(std::string(e.what()).find(std::to_string(per_thread * 4096)) != std::string::npos);
  }
}

TEST_CASE("a single two-valued variable gives two stores") {
  const Program p = testing::parse_ok("lock m; init { } thread { yield; }");
  const Model m(p);
  CHECK(StateSpace::full(m).size() == 2);
}

TEST_CASE("indices and digit vectors are a bijection") {
  const Program p = testing::load("counter.mvl");
  const Model m(p);
  const StateSpace s = StateSpace::thread(m, 2);
  std::mt19937_64 g(3);
  std::uniform_int_distribution<std::uint64_t> pick(0, s.size() - 1);
  Digits d;
  for (int i = 0; i < 1000; ++i) {
    const auto idx = pick(g);
    s.decode(idx, d);
    CHECK(s.encode(d) == idx);
  }
  CHECK(s.render(s.encode(s.initial())) == "x=0 m=0 n@2=0 t@2=0 u@2=0");
}

TEST_CASE("formula evaluation") {
  const Program p = testing::parse_ok(
      "bits 4; listdepth 1; int x; lock m; list int l; optional int o; local int n; init { } thread { yield; yield; }");
  const Model m(p);
  const StateSpace s = StateSpace::full(m);
  Digits pre = s.initial(), post = s.initial();
  const int xs = 0, ms = 1;
  pre[ms] = post[ms] = 1;
  CHECK(eval_in(s, 1, "m == tid", pre, post) == Value::boolean(true));
  CHECK(eval_in(s, 2, "m == tid", pre, post) == Value::boolean(false));
  pre[ms] = 0;
  post[ms] = 2;
  CHECK(eval_in(s, 2, "old(m) == 0 && m == tid", pre, post) == Value::boolean(true));
  post[xs] = 3 + 8;  // x = 3
  CHECK(eval_in(s, 1, "even(x)", pre, post) == Value::boolean(false));
  post[xs] = -2 + 8;
  CHECK(eval_in(s, 1, "even(x)", pre, post) == Value::boolean(true));
  post[xs] = 7 + 8;
  CHECK(eval_in(s, 1, "x + 1 == -8", pre, post) == Value::boolean(true));
  CHECK(eval_in(s, 1, "o == None", pre, post) == Value::boolean(true));
  CHECK(eval_in(s, 1, "head(l) == 0 && tail(l) == Nil", pre, post) == Value::boolean(true));
  CHECK(eval_in(s, 1, "head(1 :: l) == 1", pre, post) == Value::boolean(true));
  // cons past the depth cap is undefined, and an undefined formula is not true
  CHECK_FALSE(eval_in(s, 1, "1 :: 1 :: 1 :: 1 :: Nil == l", pre, post).defined());
  CHECK(eval_in(s, 1, "false && 1 :: 1 :: 1 :: 1 :: Nil == l", pre, post) == Value::boolean(false));
}

TEST_CASE("bounded lists") {
  const ListCodec c(-2, 1, 3);
  CHECK(c.size() == 1 + 4 + 16 + 64);
  CHECK(c.head(0) == 0);
  CHECK(c.tail(0) == 0);
  const auto one = c.cons(1, 0);
  const auto two = c.cons(-2, one);
  CHECK(c.render(two) == "[-2,1]");
  CHECK(c.tail(two) == one);
  CHECK(c.cons(0, c.cons(0, two)) == -1);
  CHECK(c.cons(5, 0) == -1);
  for (std::int64_t code = 0; code < c.size(); ++code) {
    if (code == 0) continue;
    CHECK(c.cons(c.head(code), c.tail(code)) == code);
  }
}

TEST_CASE("relies and guarantees without old() are invariants") {
  auto p = testing::parse_ok("int x; init { } relies even(x); thread { yield; }");
  const Model m(p);
  CHECK(print(*m.global_rely()) == "even(old(x)) ==> even(x)");
  CHECK(m.global_guarantee() == nullptr);
}

// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "mover/relation.hpp"
#include "mover/space.hpp"
#include "naive_relation.hpp"

using namespace mover;


TEST_CASE("relation engine agrees with the set reference on random cases") {
  std::mt19937_64 g(20241);
  int agreed = 0;
  for (int i = 0; i < 1000; ++i) agreed += naive::differential_case(g) ? 1 : 0;
  CHECK(agreed == 1000);
}

TEST_CASE("algebraic identities") {
  std::mt19937_64 g(7);
  for (int i = 0; i < 50; ++i) {
    const int tids = 2;
    const std::uint64_t stores = 8;
    const Rel2 p = naive::to_rel2(naive::random_rel2(g, tids, stores, 0.2));
    const Rel2 a = naive::to_rel2(naive::random_rel2(g, tids, stores, 0.2));
    const Rel2 b = naive::to_rel2(naive::random_rel2(g, tids, stores, 0.2));
    const Rel2 id = identity(tids, stores);
    const Rel1 s = naive::to_rel1(naive::random_rel1(g, tids, stores, 0.5), tids, stores);
    CHECK(compose(p, id) == p);
    CHECK(compose(id, a) == a);
    CHECK(compose(compose(p, a), b) == compose(p, compose(a, b)));
    CHECK(postof(two(s), tids, stores) == s);
    CHECK(yield_close(p, Rel2{}, tids, stores) == two(postof(p, tids, stores)));
    CHECK(yield_close(Rel2{}, a, tids, stores).empty());
    // yield-close is diagonal
    yield_close(p, a, tids, stores).for_each([](int, std::uint64_t x, std::uint64_t y) { CHECK(x == y); });
  }
  CHECK(rstar(Rel2{}, 2, 4) == identity(2, 4));
  CHECK(rstar(identity(2, 4), 2, 4) == identity(2, 4));
  CHECK(two(Rel1(2, 4)).empty());
  CHECK_FALSE(not_subset(Rel2{}, Rel2{}));
  CHECK(not_subset(identity(1, 3), Rel2{}));
}

TEST_CASE("closure of add-two reaches every value of the same parity") {
  // stores 0..15 stand for x in [-8, 7]; the step adds 2 with wrap-around
  std::vector<Triple> step;
  for (std::uint64_t s = 0; s < 16; ++s) step.push_back({1, s, (s + 2) % 16});
  const Rel2 star = rstar(Rel2::from_triples(step), 1, 16);
  for (std::uint64_t a = 0; a < 16; ++a)
    for (std::uint64_t b = 0; b < 16; ++b) CHECK(star.contains(1, a, b) == (a % 2 == b % 2));
}

TEST_CASE("budget is enforced") {
  ScopedBudget small(10);
  CHECK_THROWS_AS(identity(1, 64), BudgetExceeded);
  std::vector<Rel2::Key> keys;
  for (std::uint64_t i = 0; i < 11; ++i) keys.push_back(Rel2::pack(1, i, i));
  CHECK_THROWS_AS(Rel2::from_keys(keys), BudgetExceeded);
}

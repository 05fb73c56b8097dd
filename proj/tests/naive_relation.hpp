// SPDX-License-Identifier: Apache-2.0
// Set-of-tuples reference semantics for the relation engine.
#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <tuple>

#include "mover/relation.hpp"

namespace naive {

using T2 = std::tuple<int, std::uint64_t, std::uint64_t>;
using T1 = std::pair<int, std::uint64_t>;
using R2 = std::set<T2>;
using R1 = std::set<T1>;

inline R2 unite(const R2& a, const R2& b) {
  R2 r = a;
  r.insert(b.begin(), b.end());
  return r;
}
inline R2 intersect(const R2& a, const R2& b) {
  R2 r;
  for (const auto& x : a)
    if (b.count(x)) r.insert(x);
  return r;
}
inline R2 subtract(const R2& a, const R2& b) {
  R2 r;
  for (const auto& x : a)
    if (!b.count(x)) r.insert(x);
  return r;
}
inline R2 compose(const R2& p, const R2& a) {
  R2 r;
  for (const auto& [t, s0, s1] : p)
    for (const auto& [u, m0, m1] : a)
      if (t == u && s1 == m0) r.insert({t, s0, m1});
  return r;
}
inline R2 two(const R1& s) {
  R2 r;
  for (const auto& [t, x] : s) r.insert({t, x, x});
  return r;
}
inline R1 postof(const R2& p) {
  R1 r;
  for (const auto& [t, a, b] : p) r.insert({t, b});
  return r;
}
// Closure by iterating composition to a fixpoint from the identity.
inline R2 rstar(const R2& r, int tids, std::uint64_t stores) {
  R2 acc;
  for (int t = 1; t <= tids; ++t)
    for (std::uint64_t s = 0; s < stores; ++s) acc.insert({t, s, s});
  for (;;) {
    R2 next = unite(acc, compose(acc, r));
    if (next == acc) return acc;
    acc = std::move(next);
  }
}
inline R2 yield_close(const R2& p, const R2& r, int tids, std::uint64_t stores) {
  R2 out;
  const R2 star = rstar(r, tids, stores);
  for (const auto& [t, a, s] : p)
    for (const auto& [u, x, y] : star)
      if (t == u && x == s) out.insert({t, y, y});
  return out;
}

inline R2 of(const mover::Rel2& r) {
  R2 out;
  r.for_each([&](int t, std::uint64_t a, std::uint64_t b) { out.insert({t, a, b}); });
  return out;
}
inline R1 of(const mover::Rel1& r) {
  R1 out;
  r.for_each([&](int t, std::uint64_t s) { out.insert({t, s}); });
  return out;
}
inline mover::Rel2 to_rel2(const R2& r) {
  std::vector<mover::Triple> ts;
  for (const auto& [t, a, b] : r) ts.push_back({t, a, b});
  return mover::Rel2::from_triples(ts);
}
inline mover::Rel1 to_rel1(const R1& r, int tids, std::uint64_t stores) {
  mover::Rel1 out(tids, stores);
  for (const auto& [t, s] : r) out.insert(t, s);
  return out;
}

inline R2 random_rel2(std::mt19937_64& g, int tids, std::uint64_t stores, double density) {
  R2 r;
  std::bernoulli_distribution keep(density);
  for (int t = 1; t <= tids; ++t)
    for (std::uint64_t a = 0; a < stores; ++a)
      for (std::uint64_t b = 0; b < stores; ++b)
        if (keep(g)) r.insert({t, a, b});
  return r;
}
inline R1 random_rel1(std::mt19937_64& g, int tids, std::uint64_t stores, double density) {
  R1 r;
  std::bernoulli_distribution keep(density);
  for (int t = 1; t <= tids; ++t)
    for (std::uint64_t a = 0; a < stores; ++a)
      if (keep(g)) r.insert({t, a});
  return r;
}

// One randomized differential case; returns false on the first disagreement.
inline bool differential_case(std::mt19937_64& g) {
  std::uniform_int_distribution<int> tid_d(1, 2);
  std::uniform_int_distribution<std::uint64_t> store_d(1, 16);
  std::uniform_real_distribution<double> dens(0.0, 0.3);
  const int tids = tid_d(g);
  const std::uint64_t stores = store_d(g);
  const auto a = random_rel2(g, tids, stores, dens(g));
  const auto b = random_rel2(g, tids, stores, dens(g));
  const auto s = random_rel1(g, tids, stores, dens(g));
  const mover::Rel2 ra = to_rel2(a), rb = to_rel2(b);
  const mover::Rel1 rs = to_rel1(s, tids, stores);
  bool ok = true;
  ok = ok && of(unite(ra, rb)) == unite(a, b);
  ok = ok && of(intersect(ra, rb)) == intersect(a, b);
  ok = ok && of(subtract(ra, rb)) == subtract(a, b);
  ok = ok && of(compose(ra, rb)) == compose(a, b);
  ok = ok && of(two(rs)) == two(s);
  ok = ok && of(postof(ra, tids, stores)) == postof(a);
  ok = ok && of(rstar(rb, tids, stores)) == rstar(b, tids, stores);
  ok = ok && of(yield_close(ra, rb, tids, stores)) == yield_close(a, b, tids, stores);
  const bool sub = subtract(a, b).empty();
  const auto w = not_subset(ra, rb);
  ok = ok && sub == !w.has_value();
  if (w) ok = ok && a.count({w->tid, w->pre, w->post}) && !b.count({w->tid, w->pre, w->post});
  ok = ok && of(mover::Rel1(rs)) == s;
  return ok;
}

}  // namespace naive

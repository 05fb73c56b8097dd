// SPDX-License-Identifier: Apache-2.0
#include "mover/relation.hpp"

#include <algorithm>
#include <deque>
#include <iterator>
#include <string>

#include "mover/space.hpp"

namespace mover {

// ---- Rel1 -------------------------------------------------------------------

Rel1::Rel1(int tids, std::uint64_t stores) : tids_(tids), stores_(stores) {
  const std::uint64_t bits = static_cast<std::uint64_t>(tids) * stores;
  Budget::check(bits / 64, "one-store predicate");
  words_.assign((bits + 63) / 64, 0);
}

bool Rel1::insert(int tid, std::uint64_t s) {
  const std::uint64_t i = static_cast<std::uint64_t>(tid - 1) * stores_ + s;
  std::uint64_t& w = words_[i / 64];
  const std::uint64_t bit = std::uint64_t{1} << (i % 64);
  if (w & bit) return false;
  w |= bit;
  return true;
}

bool Rel1::contains(int tid, std::uint64_t s) const {
  if (tid < 1 || tid > tids_ || s >= stores_) return false;
  const std::uint64_t i = static_cast<std::uint64_t>(tid - 1) * stores_ + s;
  return (words_[i / 64] >> (i % 64)) & 1;
}

std::uint64_t Rel1::count() const {
  std::uint64_t n = 0;
  for (auto w : words_) n += static_cast<std::uint64_t>(__builtin_popcountll(w));
  return n;
}

Rel1& Rel1::operator|=(const Rel1& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

Rel1& Rel1::operator&=(const Rel1& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

// ---- Rel2 -------------------------------------------------------------------

void Rel2::check_space(std::uint64_t stores) {
  if (stores > kMaxStores) {
    throw BudgetExceeded("budget exceeded: working space has " + std::to_string(stores) +
                         " stores, relations support at most " + std::to_string(kMaxStores));
  }
}

Rel2 Rel2::from_keys(std::vector<Key> keys) {
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  Budget::check(keys.size(), "two-store relation");
  Rel2 r;
  r.keys_ = std::move(keys);
  return r;
}

Rel2 Rel2::from_triples(const std::vector<Triple>& ts) {
  std::vector<Key> keys;
  keys.reserve(ts.size());
  for (const auto& t : ts) keys.push_back(pack(t.tid, t.pre, t.post));
  return from_keys(std::move(keys));
}

bool Rel2::contains(int tid, std::uint64_t pre, std::uint64_t post) const {
  return std::binary_search(keys_.begin(), keys_.end(), pack(tid, pre, post));
}

std::vector<Triple> Rel2::triples() const {
  std::vector<Triple> out;
  out.reserve(keys_.size());
  for (Key k : keys_) out.push_back(unpack(k));
  return out;
}

Rel2 unite(const Rel2& a, const Rel2& b) {
  std::vector<Rel2::Key> out;
  std::set_union(a.keys().begin(), a.keys().end(), b.keys().begin(), b.keys().end(),
                 std::back_inserter(out));
  return Rel2::from_keys(std::move(out));
}

Rel2 intersect(const Rel2& a, const Rel2& b) {
  std::vector<Rel2::Key> out;
  std::set_intersection(a.keys().begin(), a.keys().end(), b.keys().begin(), b.keys().end(),
                        std::back_inserter(out));
  return Rel2::from_keys(std::move(out));
}

Rel2 subtract(const Rel2& a, const Rel2& b) {
  std::vector<Rel2::Key> out;
  std::set_difference(a.keys().begin(), a.keys().end(), b.keys().begin(), b.keys().end(),
                      std::back_inserter(out));
  return Rel2::from_keys(std::move(out));
}

std::optional<Triple> not_subset(const Rel2& a, const Rel2& b) {
  auto it = b.keys().begin();
  for (Rel2::Key k : a.keys()) {
    it = std::lower_bound(it, b.keys().end(), k);
    if (it == b.keys().end() || *it != k) return Rel2::unpack(k);
  }
  return std::nullopt;
}

std::optional<std::pair<int, std::uint64_t>> not_subset(const Rel1& a, const Rel1& b) {
  std::optional<std::pair<int, std::uint64_t>> w;
  a.for_each([&](int t, std::uint64_t s) {
    if (!w && !b.contains(t, s)) w = {t, s};
  });
  return w;
}

Successors successors_of(const Rel2& a) {
  return [&a](int tid, std::uint64_t s, std::vector<std::uint64_t>& out) {
    auto it = std::lower_bound(a.keys().begin(), a.keys().end(), Rel2::pack(tid, s, 0));
    for (; it != a.keys().end(); ++it) {
      const Triple t = Rel2::unpack(*it);
      if (t.tid != tid || t.pre != s) break;
      out.push_back(t.post);
    }
  };
}

Rel2 compose(const Rel2& p, const Rel2& a) { return compose(p, successors_of(a)); }

Rel2 compose(const Rel2& p, const Successors& a) {
  std::vector<Rel2::Key> out;
  std::vector<std::uint64_t> next;
  for (Rel2::Key k : p.keys()) {
    const Triple t = Rel2::unpack(k);
    next.clear();
    a(t.tid, t.post, next);
    for (auto s : next) out.push_back(Rel2::pack(t.tid, t.pre, s));
    if (out.size() > 2 * Budget::limit()) Budget::check(out.size(), "composition");
  }
  return Rel2::from_keys(std::move(out));
}

Rel2 two(const Rel1& s) {
  Rel2::check_space(s.stores());
  std::vector<Rel2::Key> out;
  s.for_each([&](int t, std::uint64_t x) { out.push_back(Rel2::pack(t, x, x)); });
  return Rel2::from_keys(std::move(out));
}

Rel1 postof(const Rel2& p, int tids, std::uint64_t stores) {
  Rel1 r(tids, stores);
  p.for_each([&](int t, std::uint64_t, std::uint64_t post) { r.insert(t, post); });
  return r;
}

Rel2 identity(int tids, std::uint64_t stores) {
  Rel2::check_space(stores);
  Budget::check(static_cast<std::uint64_t>(tids) * stores, "identity relation");
  std::vector<Rel2::Key> out;
  for (int t = 1; t <= tids; ++t)
    for (std::uint64_t s = 0; s < stores; ++s) out.push_back(Rel2::pack(t, s, s));
  return Rel2::from_keys(std::move(out));
}

Rel1 reach(const Rel1& from, const Successors& r) {
  Rel1 seen = from;
  std::deque<std::pair<int, std::uint64_t>> work;
  from.for_each([&](int t, std::uint64_t s) { work.emplace_back(t, s); });
  std::vector<std::uint64_t> next;
  while (!work.empty()) {
    auto [t, s] = work.front();
    work.pop_front();
    next.clear();
    r(t, s, next);
    for (auto n : next)
      if (seen.insert(t, n)) work.emplace_back(t, n);
  }
  return seen;
}

Rel2 rstar(const Rel2& r, int tids, std::uint64_t stores) {
  Rel2::check_space(stores);
  const Successors succ = successors_of(r);
  std::vector<Rel2::Key> out;
  for (int t = 1; t <= tids; ++t) {
    for (std::uint64_t s = 0; s < stores; ++s) {
      Rel1 start(tids, stores);
      start.insert(t, s);
      reach(start, succ).for_each([&](int, std::uint64_t x) { out.push_back(Rel2::pack(t, s, x)); });
      Budget::check(out.size(), "closure");
    }
  }
  return Rel2::from_keys(std::move(out));
}

Rel2 yield_close(const Rel2& p, const Successors& r, int tids, std::uint64_t stores) {
  return two(reach(postof(p, tids, stores), r));
}

Rel2 yield_close(const Rel2& p, const Rel2& r, int tids, std::uint64_t stores) {
  return yield_close(p, successors_of(r), tids, stores);
}

}  // namespace mover

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace mover {

/// One-store predicate: a set of (tid, store) over tids 1..tids, dense bitset.
class Rel1 {
 public:
  Rel1() = default;
  Rel1(int tids, std::uint64_t stores);

  int tids() const { return tids_; }
  std::uint64_t stores() const { return stores_; }

  bool insert(int tid, std::uint64_t s);  // true if newly added
  bool contains(int tid, std::uint64_t s) const;
  std::uint64_t count() const;
  bool empty() const { return count() == 0; }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int b = __builtin_ctzll(bits);
        bits &= bits - 1;
        const std::uint64_t i = w * 64 + static_cast<std::uint64_t>(b);
        f(static_cast<int>(i / stores_) + 1, i % stores_);
      }
    }
  }

  Rel1& operator|=(const Rel1& o);
  Rel1& operator&=(const Rel1& o);
  bool operator==(const Rel1& o) const = default;

 private:
  int tids_ = 0;
  std::uint64_t stores_ = 0;
  std::vector<std::uint64_t> words_;
};

struct Triple {
  int tid = 0;
  std::uint64_t pre = 0;
  std::uint64_t post = 0;
  bool operator==(const Triple&) const = default;
  auto operator<=>(const Triple&) const = default;
};

/// Two-store predicate: a sorted set of packed (tid, pre, post) keys.
class Rel2 {
 public:
  using Key = std::uint64_t;
  static constexpr int kStoreBits = 28;
  static constexpr std::uint64_t kMaxStores = std::uint64_t{1} << kStoreBits;

  static Key pack(int tid, std::uint64_t pre, std::uint64_t post) {
    return (static_cast<Key>(tid) << (2 * kStoreBits)) | (pre << kStoreBits) | post;
  }
  static Triple unpack(Key k) {
    constexpr Key mask = kMaxStores - 1;
    return {static_cast<int>(k >> (2 * kStoreBits)), (k >> kStoreBits) & mask, k & mask};
  }
  /// Throws BudgetExceeded when a space cannot be packed.
  static void check_space(std::uint64_t stores);

  Rel2() = default;
  /// Sorts and de-duplicates; enforces the item budget.
  static Rel2 from_keys(std::vector<Key> keys);
  static Rel2 from_triples(const std::vector<Triple>& ts);

  const std::vector<Key>& keys() const { return keys_; }
  std::size_t size() const { return keys_.size(); }
  bool empty() const { return keys_.empty(); }
  bool contains(int tid, std::uint64_t pre, std::uint64_t post) const;
  std::vector<Triple> triples() const;

  template <typename F>
  void for_each(F&& f) const {
    for (Key k : keys_) {
      const Triple t = unpack(k);
      f(t.tid, t.pre, t.post);
    }
  }

  bool operator==(const Rel2&) const = default;

 private:
  std::vector<Key> keys_;
};

Rel2 unite(const Rel2& a, const Rel2& b);
Rel2 intersect(const Rel2& a, const Rel2& b);
Rel2 subtract(const Rel2& a, const Rel2& b);

/// First element of a outside b, if any.
std::optional<Triple> not_subset(const Rel2& a, const Rel2& b);
std::optional<std::pair<int, std::uint64_t>> not_subset(const Rel1& a, const Rel1& b);

/// Successor function of an action or relation: appends every σ' with
/// (tid, σ, σ') in the relation.
using Successors = std::function<void(int tid, std::uint64_t s, std::vector<std::uint64_t>& out)>;

Successors successors_of(const Rel2& a);

/// {(t,σ,σ'') | (t,σ,σ') ∈ p, (t,σ',σ'') ∈ a}
Rel2 compose(const Rel2& p, const Rel2& a);
Rel2 compose(const Rel2& p, const Successors& a);

Rel2 two(const Rel1& s);
Rel1 postof(const Rel2& p, int tids, std::uint64_t stores);
Rel2 identity(int tids, std::uint64_t stores);

/// Reflexive-transitive closure per thread.
Rel2 rstar(const Rel2& r, int tids, std::uint64_t stores);

/// States reachable from `from` through any number of steps.
Rel1 reach(const Rel1& from, const Successors& r);

/// {(t,σ',σ') | (t,_,σ) ∈ p, (t,σ,σ') ∈ R*}
Rel2 yield_close(const Rel2& p, const Successors& r, int tids, std::uint64_t stores);
Rel2 yield_close(const Rel2& p, const Rel2& r, int tids, std::uint64_t stores);

}  // namespace mover

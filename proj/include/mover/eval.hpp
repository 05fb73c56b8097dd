// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "mover/ast.hpp"
#include "mover/space.hpp"

namespace mover {

/// An expression bound to the slots of one state space, as seen by thread `tid`.
/// `old(x)` reads the pre-store, a bare `x` reads the post-store. A null
/// expression compiles to `true`.
class Compiled {
 public:
  Compiled() = default;
  Compiled(const StateSpace& space, int tid, const ExprPtr& e);

  Value eval(const std::int32_t* pre, const std::int32_t* post) const;
  bool holds(const std::int32_t* pre, const std::int32_t* post) const {
    const Value v = eval(pre, post);
    return v.kind == VKind::Bool && v.v != 0;
  }
  bool holds(const Digits& pre, const Digits& post) const { return holds(pre.data(), post.data()); }
  bool trivially_true() const { return nodes_.empty(); }

  /// Slots read through old(...) and through bare names.
  const std::vector<int>& pre_slots() const { return pre_slots_; }
  const std::vector<int>& post_slots() const { return post_slots_; }

 private:
  struct Node {
    ExprKind kind;
    Op op;
    std::int64_t value;
    int slot = -1;
    int a = -1;
    int b = -1;
  };
  int build(const Expr& e);
  Value run(int n, const std::int32_t* pre, const std::int32_t* post) const;

  const StateSpace* space_ = nullptr;
  int tid_ = 0;
  std::vector<Node> nodes_;
  std::vector<int> pre_slots_;
  std::vector<int> post_slots_;
};

/// Evaluates a variable-free expression (init values).
Value eval_constant(const Model& m, const Expr& e);

/// Variable instances an expression names when read by thread `tid`.
std::vector<Instance> mentioned(const Model& m, const Expr* e, int tid);

/// Sorted, de-duplicated union.
std::vector<Instance> merge(std::vector<Instance> a, const std::vector<Instance>& b);

}  // namespace mover

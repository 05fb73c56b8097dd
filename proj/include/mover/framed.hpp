// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "mover/eval.hpp"
#include "mover/relation.hpp"
#include "mover/space.hpp"

namespace mover {

/// Successors of the two-store formula q restricted to stores that differ
/// only in `free_slots`: {σ[W:=w] | q(σ, σ[W:=w])}. Results are memoized on
/// the digits q can observe, so repeated queries are cheap.
class Framed {
 public:
  Framed(const StateSpace& space, int tid, const ExprPtr& q, std::vector<int> free_slots);

  void operator()(std::uint64_t index, std::vector<std::uint64_t>& out) const;
  Successors successors() const;

 private:
  const StateSpace* space_;
  Compiled q_;
  std::vector<int> free_;
  std::vector<int> key_slots_;
  std::uint64_t assignments_ = 1;
  mutable std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> memo_;
};

/// Every slot of `space` holding a global.
std::vector<int> global_slots(const StateSpace& space);

}  // namespace mover

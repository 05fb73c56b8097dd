// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mover/ast.hpp"
#include "mover/eval.hpp"
#include "mover/space.hpp"

namespace mover {

/// A syntactic action: a primitive statement, or one component of the
/// conditional action of an if/while (branch 0 enters the body / then-block).
struct ActionRef {
  const Stmt* stmt = nullptr;
  int branch = -1;

  bool conditional() const { return branch >= 0; }
  std::string describe() const;
  const SourceSpan& span() const { return stmt->span; }
  bool operator==(const ActionRef&) const = default;
};

enum class AccessKind { LocalOnly, GlobalRead, GlobalWrite };

struct ActionAccess {
  AccessKind kind = AccessKind::LocalOnly;
  int var = -1;  // global accessed, for reads and writes
};

ActionAccess classify(const Model& m, const ActionRef& a);

/// Instances an action reads and writes when run by thread `tid`.
struct Footprint {
  std::vector<Instance> reads;
  std::vector<Instance> writes;
};
Footprint footprint(const Model& m, const ActionRef& a, int tid);

/// Every action of the program (function bodies and threads), by statement id.
std::vector<ActionRef> program_actions(const Program& p);

/// An action bound to a state space and thread, as a successor generator.
class Action {
 public:
  Action(const StateSpace& space, int tid, const ActionRef& ref);

  const ActionRef& ref() const { return ref_; }
  int tid() const { return tid_; }
  const StateSpace& space() const { return *space_; }
  const ActionAccess& access() const { return access_; }

  /// Appends every post-store of this action from store `index` (digits `d`).
  void successors(const Digits& d, std::uint64_t index, std::vector<std::uint64_t>& out) const;
  void successors(std::uint64_t index, std::vector<std::uint64_t>& out) const;
  bool enabled(const Digits& d, std::uint64_t index) const;

 private:
  enum class Kind { Assign, Havoc, Acquire, Release, Test, CasSuccess, Identity, Skip };

  const StateSpace* space_;
  int tid_;
  ActionRef ref_;
  ActionAccess access_;
  Kind kind_ = Kind::Skip;
  bool want_ = true;  // Test: required truth value
  int slot_ = -1;
  Compiled a_, b_;
};

}  // namespace mover

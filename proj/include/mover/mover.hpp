// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mover/action.hpp"
#include "mover/effect.hpp"
#include "mover/relation.hpp"

namespace mover {

/// The specification function M for one thread over one state space:
/// the declared clauses of each global, first matching clause wins.
class MoverTable {
 public:
  MoverTable(const StateSpace& space, int tid);

  /// M(A, tid, σ). Local-only and blocked actions are B; no matching clause is E.
  Effect effect_of(const Action& a, const Digits& d, std::uint64_t index) const;
  Effect effect_of(const Action& a, std::uint64_t index) const;

 private:
  struct Clause {
    Effect effect;
    Compiled condition;
  };
  const std::vector<Clause>& clauses(int var, Access which) const;

  const StateSpace* space_;
  int tid_;
  mutable std::vector<std::optional<std::vector<Clause>>> read_, write_;
};

struct EffectOver {
  Effect effect = Effect::B;
  /// A (tid, store) at which the action has the join's effect; absent for empty P.
  std::optional<std::pair<int, std::uint64_t>> witness;
};

/// Join of M(A, t, σ) over every post-store σ of P; B over an empty P.
EffectOver effect_over(const Action& a, const MoverTable& m, const Rel2& p);
EffectOver effect_over(const Action& a, const MoverTable& m, const Rel1& posts);

struct ValidityViolation {
  int condition = 0;  // 1..4
  ActionRef a1, a2;
  int t = 0, u = 0;
  std::string stores;  // rendered σ, σ', σ''
  std::string str() const;
};

struct ValidityOptions {
  /// Enumerate only the instances the two actions and their clauses touch.
  bool project = true;
  /// Skip action pairs whose footprints cannot interact.
  bool skip_independent = true;
  /// Stop after this many violations (0: collect all, one per pair and condition).
  std::size_t limit = 0;
};

std::vector<ValidityViolation> check_validity(const Model& m, const ValidityOptions& o = {});

/// Instances named by the clauses governing an action's access, for thread tid.
std::vector<Instance> clause_instances(const Model& m, const ActionRef& a, int tid);

}  // namespace mover

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mover/ast.hpp"
#include "mover/effect.hpp"
#include "mover/mover.hpp"
#include "mover/relation.hpp"
#include "mover/space.hpp"

namespace mover {

enum class Totality { Global, Reachable };

struct CheckOptions {
  Totality totality = Totality::Global;
  bool validity = true;
  /// Sees the precondition relation of every checked statement (reporting
  /// pass only), in the space of globals plus that thread's locals.
  std::function<void(const Stmt&, int tid, const StateSpace&, const Rel2&)> observe;
};

/// A failed rule antecedent. `rule` is the rule name ("M-yield", "validity", ...).
struct Failure {
  std::string rule;
  std::string message;
  SourceSpan span;
  std::string where;  // "function add" / "thread 2" / "program"
  std::vector<std::string> witness;

  std::string str() const;
};

/// Effect computed for one statement, joined over every thread that checks it.
struct StmtEffect {
  int stmt = -1;
  SourceSpan span;
  std::string text;
  std::string where;
  Effect effect = Effect::B;
};

struct FunctionVerdict {
  std::string name;
  bool atomic = true;
  Effect declared = Effect::N;
  Effect computed = Effect::B;
  bool verified = true;
};

struct CheckStats {
  std::uint64_t largest_space = 0;
  std::uint64_t largest_relation = 0;
  std::uint64_t validity_pairs = 0;
  double seconds = 0;
};

struct VerificationReport {
  std::vector<Failure> failures;
  std::vector<StmtEffect> effects;  // by statement id
  std::vector<FunctionVerdict> functions;
  std::vector<ValidityViolation> validity;
  CheckStats stats;

  bool verified() const { return failures.empty(); }
  const StmtEffect* effect_at(int stmt) const;
  /// True when some failure has this rule name.
  bool has(const std::string& rule) const;
};

/// Checks every function, every thread, validity of the mover specification
/// and the remaining whole-program obligations.
VerificationReport verify(const Model& m, const CheckOptions& o = {});

}  // namespace mover

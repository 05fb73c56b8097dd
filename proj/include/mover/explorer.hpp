// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mover/effect.hpp"
#include "mover/space.hpp"

namespace mover {

enum class Scheduler { Preemptive, Nonpreemptive };

const char* name(Scheduler s);

struct ExploreOptions {
  Scheduler scheduler = Scheduler::Preemptive;
  /// Track the reducible-pattern phase of every thread and flag actions whose
  /// effect is E or that break the pattern. Successor sets are unchanged.
  bool instrumented = false;
  /// Called once per reachable state that is not wrong, for every unfinished
  /// thread, with the thread's next statement. `running` is set for the thread
  /// holding the nonpreemptive scheduler.
  std::function<void(int tid, int stmt, std::uint64_t store, bool running)> visit;
};

/// One interpreter step. `rule` is E-action, E-if, E-while, E-call or E-yield.
struct TraceStep {
  int tid = 0;
  std::string rule;
  int stmt = -1;
  int branch = -1;
  std::uint64_t before = 0;  // indices in StateSpace::full
  std::uint64_t after = 0;
};

struct Trace {
  std::vector<TraceStep> steps;
  std::uint64_t end = 0;
  bool ends_wrong = false;
};

struct InstrumentFlag {
  int tid = 0;
  int stmt = -1;
  SourceSpan span;
  std::string action;
  Effect effect = Effect::B;
  std::string message;
};

struct ExploreStats {
  std::uint64_t states = 0;
  std::uint64_t transitions = 0;
  double seconds = 0;
};

struct ExploreResult {
  Scheduler scheduler = Scheduler::Preemptive;
  std::set<std::uint64_t> terminal;  // stores with every thread finished
  bool wrong = false;
  std::optional<Trace> wrong_trace;
  std::uint64_t deadlocks = 0;
  std::optional<Trace> deadlock_trace;
  std::vector<InstrumentFlag> flags;
  ExploreStats stats;
};

/// Exhaustive breadth-first exploration from the initial store. Throws
/// BudgetExceeded when the visited set outgrows the budget.
ExploreResult explore(const Model& m, const ExploreOptions& o = {});

struct Comparison {
  ExploreResult preemptive;
  ExploreResult nonpreemptive;
  bool equivalent = true;
  std::vector<std::string> differences;
};

Comparison compare_schedulers(const Model& m);

struct ReplayResult {
  bool ok = false;
  std::string message;  // first mismatch when !ok
};

/// Re-executes a trace step by step and checks that it ends where it claims.
ReplayResult replay(const Model& m, const Trace& t);

/// `tid | rule | statement-span | store-delta`, one line per step.
std::string dump(const Model& m, const Trace& t);

}  // namespace mover

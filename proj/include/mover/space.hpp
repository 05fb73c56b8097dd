// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mover/ast.hpp"

namespace mover {

/// Raised whenever a working space, relation or exploration would exceed the
/// configured item budget. Never silently truncated.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Process-wide cap on materialized items (stores in a working space, tuples
/// in a relation, explored states).
struct Budget {
  static constexpr std::uint64_t kDefault = std::uint64_t{1} << 24;
  static std::uint64_t limit();
  static void set(std::uint64_t items);
  static void check(std::uint64_t items, const std::string& what);
};

class ScopedBudget {
 public:
  explicit ScopedBudget(std::uint64_t items) : saved_(Budget::limit()) { Budget::set(items); }
  ~ScopedBudget() { Budget::set(saved_); }
  ScopedBudget(const ScopedBudget&) = delete;
  ScopedBudget& operator=(const ScopedBudget&) = delete;

 private:
  std::uint64_t saved_;
};

enum class VKind : unsigned char { Int, Bool, None, List, Undef };

/// Runtime value of an expression. Lists carry a code from the ListCodec.
struct Value {
  VKind kind = VKind::Undef;
  std::int64_t v = 0;

  static Value integer(std::int64_t x) { return {VKind::Int, x}; }
  static Value boolean(bool b) { return {VKind::Bool, b ? 1 : 0}; }
  static Value none() { return {VKind::None, 0}; }
  static Value list(std::int64_t code) { return {VKind::List, code}; }
  static Value undef() { return {VKind::Undef, 0}; }
  bool defined() const { return kind != VKind::Undef; }
  bool operator==(const Value&) const = default;
};

/// Immutable integer lists of bounded depth over the signed int window.
/// Code 0 is Nil; codes enumerate lists by length, then lexicographically.
class ListCodec {
 public:
  ListCodec() = default;
  ListCodec(std::int64_t lo, std::int64_t hi, int depth);

  std::int64_t size() const { return static_cast<std::int64_t>(head_.size()); }
  std::int64_t head(std::int64_t code) const { return head_[static_cast<std::size_t>(code)]; }
  std::int64_t tail(std::int64_t code) const { return tail_[static_cast<std::size_t>(code)]; }
  /// -1 when the result would exceed the depth cap.
  std::int64_t cons(std::int64_t elem, std::int64_t code) const;
  std::vector<std::int64_t> elements(std::int64_t code) const;
  std::string render(std::int64_t code) const;

 private:
  std::int64_t lo_ = 0;
  std::int64_t width_ = 0;
  int depth_ = 0;
  std::vector<std::int64_t> head_;
  std::vector<std::int64_t> tail_;
  std::vector<int> length_;
  std::vector<std::int32_t> cons_;  // [elem - lo][code]
};

/// Finite domain of one variable instance; digits are dense 0..size-1.
struct Domain {
  TypeKind type = TypeKind::Int;
  std::int64_t size = 0;
  std::int64_t lo = 0;  // int window minimum (Int, OptInt)
};

/// Variable declarations, bounds and initial store of a program.
class Model {
 public:
  struct Overrides {
    std::optional<int> bits;
    std::optional<int> list_depth;
  };

  explicit Model(const Program& p, Overrides o = {});

  const Program& program() const { return *program_; }
  int bits() const { return bits_; }
  int list_depth() const { return depth_; }
  int threads() const { return program_->thread_count(); }
  std::int64_t int_lo() const { return lo_; }
  std::int64_t int_hi() const { return hi_; }
  std::int64_t wrap(std::int64_t x) const;
  const ListCodec& lists() const { return *lists_; }

  int var_index(const std::string& name) const;
  const VarDecl& var(int idx) const { return program_->vars[static_cast<std::size_t>(idx)]; }
  int var_count() const { return static_cast<int>(program_->vars.size()); }
  Domain domain(int var) const;

  Value decode(const Domain& d, std::int64_t digit) const;
  std::optional<std::int64_t> encode(const Domain& d, const Value& v) const;
  std::string render(const Value& v) const;

  /// Value of each variable in the initial store (by var index).
  const std::vector<Value>& init_values() const { return init_; }

  /// Relies / guarantees as two-store formulas: a formula with no old(...)
  /// is an invariant I and denotes I(old) ==> I(new). Null means `true`.
  static ExprPtr as_relation(const ExprPtr& f);
  ExprPtr global_rely() const;
  ExprPtr global_guarantee() const;

 private:
  std::shared_ptr<const Program> program_;
  int bits_ = 5;
  int depth_ = 3;
  std::int64_t lo_ = 0;
  std::int64_t hi_ = 0;
  std::shared_ptr<ListCodec> lists_;
  std::vector<Value> init_;
};

/// A variable instance: a global (tid 0) or thread t's copy of a local.
struct Instance {
  int var = -1;
  int tid = 0;
  bool operator==(const Instance&) const = default;
  auto operator<=>(const Instance&) const = default;
};

using Digits = std::vector<std::int32_t>;

/// Mixed-radix enumeration of stores over a chosen set of instances.
class StateSpace {
 public:
  /// `enumerable` spaces are checked against the budget; the others are only
  /// used to index individual stores (the explorer's full space).
  StateSpace(const Model& m, std::vector<Instance> instances, bool enumerable = true);

  /// Every instance of the program: globals, then locals for tids 1..n.
  static StateSpace full(const Model& m, bool enumerable = true);
  /// Globals plus thread t's local instances.
  static StateSpace thread(const Model& m, int tid);

  const Model& model() const { return *model_; }
  std::uint64_t size() const { return size_; }
  const std::vector<Instance>& instances() const { return instances_; }
  int slots() const { return static_cast<int>(instances_.size()); }
  const Domain& domain(int slot) const { return domains_[static_cast<std::size_t>(slot)]; }
  std::uint64_t stride(int slot) const { return strides_[static_cast<std::size_t>(slot)]; }

  /// Slot of an instance, or -1.
  int slot(Instance i) const;
  /// Slot for a variable name as seen by thread tid (locals resolve to tid's copy).
  int slot_for(int var, int tid) const;

  void decode(std::uint64_t index, Digits& out) const;
  std::uint64_t encode(std::span<const std::int32_t> digits) const;
  Value value(std::span<const std::int32_t> digits, int slot) const;

  std::string label(int slot) const;
  std::string render(std::uint64_t index) const;
  /// "x: 0->1, m: 0->2" for changed slots.
  std::string delta(std::uint64_t from, std::uint64_t to) const;

  /// Digits of the model's initial store restricted to this space.
  Digits initial() const;

 private:
  const Model* model_;
  std::vector<Instance> instances_;
  std::vector<Domain> domains_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t size_ = 1;
};

}  // namespace mover

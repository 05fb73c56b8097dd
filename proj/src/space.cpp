// SPDX-License-Identifier: Apache-2.0
#include "mover/space.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "mover/eval.hpp"

namespace mover {

namespace {
std::uint64_t g_budget = Budget::kDefault;

// Replaces every variable occurrence with old(variable).
ExprPtr to_old(const ExprPtr& e) {
  if (e->kind == ExprKind::Var) return Expr::old(e->name, e->span);
  if (e->args.empty()) return e;
  auto c = std::make_shared<Expr>(*e);
  for (auto& a : c->args) a = to_old(a);
  return c;
}

bool uses_type(const Program& p, TypeKind k) {
  return std::any_of(p.vars.begin(), p.vars.end(), [k](const VarDecl& v) { return v.type == k; });
}
}  // namespace

std::uint64_t Budget::limit() { return g_budget; }
void Budget::set(std::uint64_t items) { g_budget = items; }
void Budget::check(std::uint64_t items, const std::string& what) {
  if (items > g_budget) {
    throw BudgetExceeded("budget exceeded: " + what + " needs " + std::to_string(items) +
                         " items, budget is " + std::to_string(g_budget));
  }
}

// ---- ListCodec --------------------------------------------------------------

ListCodec::ListCodec(std::int64_t lo, std::int64_t hi, int depth)
    : lo_(lo), width_(hi - lo + 1), depth_(depth) {
  std::uint64_t total = 1, level = 1;
  for (int k = 1; k <= depth; ++k) {
    level *= static_cast<std::uint64_t>(width_);
    total += level;
    Budget::check(total, "list domain");
  }
  head_.reserve(total);
  tail_.reserve(total);
  length_.reserve(total);
  head_.push_back(0);
  tail_.push_back(0);
  length_.push_back(0);
  cons_.assign(static_cast<std::size_t>(width_) * total, -1);
  std::int64_t prev_begin = 0, prev_end = 1;
  for (int k = 1; k <= depth; ++k) {
    const std::int64_t begin = size();
    for (std::int64_t e = 0; e < width_; ++e) {
      for (std::int64_t t = prev_begin; t < prev_end; ++t) {
        const auto code = size();
        head_.push_back(lo_ + e);
        tail_.push_back(t);
        length_.push_back(k);
        cons_[static_cast<std::size_t>(e * static_cast<std::int64_t>(total) + t)] =
            static_cast<std::int32_t>(code);
      }
    }
    prev_begin = begin;
    prev_end = size();
  }
}

std::int64_t ListCodec::cons(std::int64_t elem, std::int64_t code) const {
  const std::int64_t e = elem - lo_;
  if (e < 0 || e >= width_) return -1;
  return cons_[static_cast<std::size_t>(e * size() + code)];
}

std::vector<std::int64_t> ListCodec::elements(std::int64_t code) const {
  std::vector<std::int64_t> out;
  while (code != 0) {
    out.push_back(head(code));
    code = tail(code);
  }
  return out;
}

std::string ListCodec::render(std::int64_t code) const {
  std::string s = "[";
  bool first = true;
  for (auto e : elements(code)) {
    if (!first) s += ",";
    s += std::to_string(e);
    first = false;
  }
  return s + "]";
}

// ---- Model ------------------------------------------------------------------

Model::Model(const Program& p, Overrides o)
    : program_(std::make_shared<const Program>(p)),
      bits_(o.bits.value_or(p.bits)),
      depth_(o.list_depth.value_or(p.list_depth)) {
  if (bits_ < 1 || bits_ > 16) throw std::invalid_argument("bits must be in 1..16");
  if (depth_ < 0 || depth_ > 8) throw std::invalid_argument("listdepth must be in 0..8");
  lo_ = -(std::int64_t{1} << (bits_ - 1));
  hi_ = (std::int64_t{1} << (bits_ - 1)) - 1;
  lists_ = std::make_shared<ListCodec>();
  if (uses_type(p, TypeKind::ListInt)) lists_ = std::make_shared<ListCodec>(lo_, hi_, depth_);

  init_.resize(p.vars.size());
  for (std::size_t i = 0; i < p.vars.size(); ++i) {
    switch (p.vars[i].type) {
      case TypeKind::Int:
      case TypeKind::Lock: init_[i] = Value::integer(0); break;
      case TypeKind::OptInt: init_[i] = Value::none(); break;
      case TypeKind::ListInt: init_[i] = Value::list(0); break;
    }
  }
  for (const auto& entry : p.init) {
    const int idx = var_index(entry.var);
    if (idx < 0) throw std::invalid_argument("init of undeclared variable " + entry.var);
    const Value v = eval_constant(*this, *entry.value);
    if (!encode(domain(idx), v)) {
      throw std::invalid_argument("init value of " + entry.var + " is outside its domain");
    }
    init_[static_cast<std::size_t>(idx)] = v;
  }
}

std::int64_t Model::wrap(std::int64_t x) const {
  const std::int64_t w = hi_ - lo_ + 1;
  std::int64_t r = (x - lo_) % w;
  if (r < 0) r += w;
  return r + lo_;
}

int Model::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < program_->vars.size(); ++i)
    if (program_->vars[i].name == name) return static_cast<int>(i);
  return -1;
}

Domain Model::domain(int var) const {
  const std::int64_t w = hi_ - lo_ + 1;
  switch (this->var(var).type) {
    case TypeKind::Int: return {TypeKind::Int, w, lo_};
    case TypeKind::Lock: return {TypeKind::Lock, threads() + 1, 0};
    case TypeKind::OptInt: return {TypeKind::OptInt, w + 1, lo_};
    case TypeKind::ListInt: return {TypeKind::ListInt, lists_->size(), 0};
  }
  return {};
}

Value Model::decode(const Domain& d, std::int64_t digit) const {
  switch (d.type) {
    case TypeKind::Int: return Value::integer(d.lo + digit);
    case TypeKind::Lock: return Value::integer(digit);
    case TypeKind::OptInt: return digit == 0 ? Value::none() : Value::integer(d.lo + digit - 1);
    case TypeKind::ListInt: return Value::list(digit);
  }
  return Value::undef();
}

std::optional<std::int64_t> Model::encode(const Domain& d, const Value& v) const {
  switch (d.type) {
    case TypeKind::Int:
      if (v.kind == VKind::Int && v.v >= lo_ && v.v <= hi_) return v.v - d.lo;
      return std::nullopt;
    case TypeKind::Lock:
      if (v.kind == VKind::Int && v.v >= 0 && v.v < d.size) return v.v;
      return std::nullopt;
    case TypeKind::OptInt:
      if (v.kind == VKind::None) return 0;
      if (v.kind == VKind::Int && v.v >= lo_ && v.v <= hi_) return v.v - d.lo + 1;
      return std::nullopt;
    case TypeKind::ListInt:
      if (v.kind == VKind::List && v.v >= 0 && v.v < d.size) return v.v;
      return std::nullopt;
  }
  return std::nullopt;
}

std::string Model::render(const Value& v) const {
  switch (v.kind) {
    case VKind::Int: return std::to_string(v.v);
    case VKind::Bool: return v.v ? "true" : "false";
    case VKind::None: return "None";
    case VKind::List: return lists_->render(v.v);
    case VKind::Undef: return "undefined";
  }
  return "?";
}

ExprPtr Model::as_relation(const ExprPtr& f) {
  if (!f || mentions_old(*f)) return f;
  return Expr::binary(Op::Implies, to_old(f), f, f->span);
}

ExprPtr Model::global_rely() const { return as_relation(program_->relies); }
ExprPtr Model::global_guarantee() const { return as_relation(program_->guarantees); }

// ---- StateSpace -------------------------------------------------------------

StateSpace::StateSpace(const Model& m, std::vector<Instance> instances, bool enumerable)
    : model_(&m), instances_(std::move(instances)) {
  domains_.reserve(instances_.size());
  strides_.resize(instances_.size());
  for (const auto& i : instances_) domains_.push_back(m.domain(i.var));
  // First slot varies slowest.
  for (std::size_t k = instances_.size(); k-- > 0;) {
    strides_[k] = size_;
    const auto d = static_cast<std::uint64_t>(domains_[k].size);
    if (d != 0 && size_ > std::numeric_limits<std::uint64_t>::max() / d) {
      throw BudgetExceeded("budget exceeded: state space overflows 64 bits");
    }
    size_ *= d;
  }
  if (enumerable) Budget::check(size_, "state space");
}

StateSpace StateSpace::full(const Model& m, bool enumerable) {
  std::vector<Instance> inst;
  for (int v = 0; v < m.var_count(); ++v)
    if (!m.var(v).local) inst.push_back({v, 0});
  for (int t = 1; t <= m.threads(); ++t)
    for (int v = 0; v < m.var_count(); ++v)
      if (m.var(v).local) inst.push_back({v, t});
  return StateSpace(m, std::move(inst), enumerable);
}

StateSpace StateSpace::thread(const Model& m, int tid) {
  std::vector<Instance> inst;
  for (int v = 0; v < m.var_count(); ++v)
    if (!m.var(v).local) inst.push_back({v, 0});
  for (int v = 0; v < m.var_count(); ++v)
    if (m.var(v).local) inst.push_back({v, tid});
  return StateSpace(m, std::move(inst));
}

int StateSpace::slot(Instance i) const {
  for (std::size_t k = 0; k < instances_.size(); ++k)
    if (instances_[k] == i) return static_cast<int>(k);
  return -1;
}

int StateSpace::slot_for(int var, int tid) const {
  return slot({var, model_->var(var).local ? tid : 0});
}

void StateSpace::decode(std::uint64_t index, Digits& out) const {
  out.resize(instances_.size());
  for (std::size_t k = 0; k < instances_.size(); ++k) {
    out[k] = static_cast<std::int32_t>(index / strides_[k]);
    index %= strides_[k];
  }
}

std::uint64_t StateSpace::encode(std::span<const std::int32_t> digits) const {
  std::uint64_t idx = 0;
  for (std::size_t k = 0; k < instances_.size(); ++k)
    idx += static_cast<std::uint64_t>(digits[k]) * strides_[k];
  return idx;
}

Value StateSpace::value(std::span<const std::int32_t> digits, int slot) const {
  return model_->decode(domain(slot), digits[static_cast<std::size_t>(slot)]);
}

std::string StateSpace::label(int slot) const {
  const auto& i = instances_[static_cast<std::size_t>(slot)];
  std::string s = model_->var(i.var).name;
  if (i.tid != 0) s += "@" + std::to_string(i.tid);
  return s;
}

std::string StateSpace::render(std::uint64_t index) const {
  Digits d;
  decode(index, d);
  std::string s;
  for (int k = 0; k < slots(); ++k) {
    if (k) s += ' ';
    s += label(k) + "=" + model_->render(value(d, k));
  }
  return s;
}

std::string StateSpace::delta(std::uint64_t from, std::uint64_t to) const {
  Digits a, b;
  decode(from, a);
  decode(to, b);
  std::string s;
  for (int k = 0; k < slots(); ++k) {
    if (a[static_cast<std::size_t>(k)] == b[static_cast<std::size_t>(k)]) continue;
    if (!s.empty()) s += ", ";
    s += label(k) + ": " + model_->render(value(a, k)) + "->" + model_->render(value(b, k));
  }
  return s.empty() ? "-" : s;
}

Digits StateSpace::initial() const {
  Digits d(instances_.size());
  for (std::size_t k = 0; k < instances_.size(); ++k) {
    const auto& v = model_->init_values()[static_cast<std::size_t>(instances_[k].var)];
    d[k] = static_cast<std::int32_t>(*model_->encode(domains_[k], v));
  }
  return d;
}

}  // namespace mover

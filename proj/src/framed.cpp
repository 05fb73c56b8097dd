// SPDX-License-Identifier: Apache-2.0
#include "mover/framed.hpp"

#include <algorithm>

namespace mover {

Framed::Framed(const StateSpace& space, int tid, const ExprPtr& q, std::vector<int> free_slots)
    : space_(&space), q_(space, tid, q), free_(std::move(free_slots)) {
  for (int s : free_) assignments_ *= static_cast<std::uint64_t>(space.domain(s).size);
  Budget::check(assignments_, "framed successor set");
  auto is_free = [&](int s) { return std::find(free_.begin(), free_.end(), s) != free_.end(); };
  for (int s : q_.pre_slots()) key_slots_.push_back(s);
  for (int s : q_.post_slots())
    if (!is_free(s)) key_slots_.push_back(s);
  std::sort(key_slots_.begin(), key_slots_.end());
  key_slots_.erase(std::unique(key_slots_.begin(), key_slots_.end()), key_slots_.end());
}

void Framed::operator()(std::uint64_t index, std::vector<std::uint64_t>& out) const {
  Digits d;
  space_->decode(index, d);
  std::uint64_t key = 0;
  for (int s : key_slots_) key = key * static_cast<std::uint64_t>(space_->domain(s).size) + static_cast<std::uint64_t>(d[static_cast<std::size_t>(s)]);

  auto it = memo_.find(key);
  if (it == memo_.end()) {
    std::vector<std::uint32_t> ok;
    Digits post = d;
    for (std::uint64_t a = 0; a < assignments_; ++a) {
      std::uint64_t rest = a;
      for (std::size_t k = free_.size(); k-- > 0;) {
        const auto size = static_cast<std::uint64_t>(space_->domain(free_[k]).size);
        post[static_cast<std::size_t>(free_[k])] = static_cast<std::int32_t>(rest % size);
        rest /= size;
      }
      if (q_.holds(d, post)) ok.push_back(static_cast<std::uint32_t>(a));
    }
    it = memo_.emplace(key, std::move(ok)).first;
  }

  std::uint64_t base = index;
  for (int s : free_) base -= static_cast<std::uint64_t>(d[static_cast<std::size_t>(s)]) * space_->stride(s);
  for (auto a : it->second) {
    std::uint64_t rest = a, idx = base;
    for (std::size_t k = free_.size(); k-- > 0;) {
      const auto size = static_cast<std::uint64_t>(space_->domain(free_[k]).size);
      idx += (rest % size) * space_->stride(free_[k]);
      rest /= size;
    }
    out.push_back(idx);
  }
}

Successors Framed::successors() const {
  return [this](int, std::uint64_t s, std::vector<std::uint64_t>& out) { (*this)(s, out); };
}

std::vector<int> global_slots(const StateSpace& space) {
  std::vector<int> out;
  for (int k = 0; k < space.slots(); ++k)
    if (space.instances()[static_cast<std::size_t>(k)].tid == 0) out.push_back(k);
  return out;
}

}  // namespace mover

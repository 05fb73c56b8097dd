// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace mover {

/// Reduction effect of a statement or action.
///
/// Values are ordered Y ⊑ B ⊑ {R, L} ⊑ N ⊑ E with R and L incomparable.
/// Sequential composition and iterative closure are the fixed tables of the
/// reducible-sequence DFA; they are transcribed, not derived.
enum class Effect : unsigned char { Y, B, R, L, N, E };

inline constexpr std::array<Effect, 6> kAllEffects = {
    Effect::Y, Effect::B, Effect::R, Effect::L, Effect::N, Effect::E};

constexpr int index(Effect e) { return static_cast<int>(e); }

bool leq(Effect a, Effect b);
Effect join(Effect a, Effect b);
Effect seq(Effect a, Effect b);
Effect star(Effect a);

/// Single-letter name ("Y", "B", ...).
std::string_view name(Effect e);
/// Surface keyword for mover effects ("both-mover", ...); Y and E have none.
std::string_view keyword(Effect e);
std::optional<Effect> from_keyword(std::string_view kw);
std::optional<Effect> from_name(std::string_view letter);

}  // namespace mover

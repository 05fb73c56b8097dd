// SPDX-License-Identifier: Apache-2.0
#include "mover/effect.hpp"

namespace mover {
namespace {

using enum Effect;

// leq_table[a][b] == (a ⊑ b); order of indices is Y B R L N E.
constexpr bool kLeq[6][6] = {
    /* Y */ {true, true, true, true, true, true},
    /* B */ {false, true, true, true, true, true},
    /* R */ {false, false, true, false, true, true},
    /* L */ {false, false, false, true, true, true},
    /* N */ {false, false, false, false, true, true},
    /* E */ {false, false, false, false, false, true},
};

constexpr Effect kJoin[6][6] = {
    /* Y */ {Y, B, R, L, N, E},
    /* B */ {B, B, R, L, N, E},
    /* R */ {R, R, R, N, N, E},
    /* L */ {L, L, N, L, N, E},
    /* N */ {N, N, N, N, N, E},
    /* E */ {E, E, E, E, E, E},
};

// Row is the first effect, column the second.
constexpr Effect kSeq[6][6] = {
    /* Y */ {Y, Y, Y, L, L, E},
    /* B */ {Y, B, R, L, N, E},
    /* R */ {R, R, R, N, N, E},
    /* L */ {Y, L, E, L, E, E},
    /* N */ {R, N, E, N, E, E},
    /* E */ {E, E, E, E, E, E},
};

constexpr Effect kStar[6] = {Y, B, R, L, E, E};

}  // namespace

bool leq(Effect a, Effect b) { return kLeq[index(a)][index(b)]; }
Effect join(Effect a, Effect b) { return kJoin[index(a)][index(b)]; }
Effect seq(Effect a, Effect b) { return kSeq[index(a)][index(b)]; }
Effect star(Effect a) { return kStar[index(a)]; }

std::string_view name(Effect e) {
  constexpr std::string_view names[] = {"Y", "B", "R", "L", "N", "E"};
  return names[index(e)];
}

std::string_view keyword(Effect e) {
  switch (e) {
    case B: return "both-mover";
    case R: return "right-mover";
    case L: return "left-mover";
    case N: return "non-mover";
    default: return "";
  }
}

std::optional<Effect> from_keyword(std::string_view kw) {
  if (kw == "both-mover") return B;
  if (kw == "right-mover") return R;
  if (kw == "left-mover") return L;
  if (kw == "non-mover") return N;
  return std::nullopt;
}

std::optional<Effect> from_name(std::string_view letter) {
  for (Effect e : kAllEffects)
    if (name(e) == letter) return e;
  return std::nullopt;
}

}  // namespace mover

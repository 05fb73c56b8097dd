// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "mover/checker.hpp"
#include "mover/explorer.hpp"
#include "mover/mover.hpp"

namespace mover {

inline constexpr const char* kVersion = "0.3.0";

enum class Format { Text, Json };

// Every JSON report has the fields version, program, verdict, failures,
// effects and stats; commands add their own extras.
std::string render(const Model& m, const VerificationReport& r, Format f);
std::string render(const Model& m, const ExploreResult& r, Format f);
std::string render(const Model& m, const Comparison& c, Format f);
std::string render(const Model& m, const std::vector<ValidityViolation>& v, Format f);

/// Source listing with each statement's effect in the margin and the
/// reducible sequences of every body numbered between yields.
std::string render_effects(const Model& m, const VerificationReport& r, const std::string& source, Format f);

}  // namespace mover

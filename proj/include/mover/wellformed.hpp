// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "mover/ast.hpp"

namespace mover {

struct Diagnostic {
  SourceSpan span;
  std::string message;
  std::string str() const { return span.str() + ": " + message; }
};

/// Static checks: declared names, types, one global per action, old(...)
/// only in two-store formulas. Empty iff the program is well-formed.
std::vector<Diagnostic> well_formed(const Program& p);

}  // namespace mover

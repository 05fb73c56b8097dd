// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mover/ast.hpp"

namespace mover {

struct ParseError {
  SourceSpan span;
  std::string message;

  std::string str() const { return span.str() + ": " + message; }
};

using ParseResult = std::variant<Program, std::vector<ParseError>>;

/// Parses `.mvl` text. On success the program is numbered and ready for
/// well-formedness checking.
ParseResult parse(std::string_view text, std::string file = {});

/// Canonical text; parse(print(p)) equals p up to spans.
std::string print(const Program& p);
std::string print(const Expr& e);
std::string print(const Cond& c);
/// One-line rendering of a statement head (no nested bodies).
std::string print_head(const Stmt& s);

}  // namespace mover

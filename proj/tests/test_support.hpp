// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include "mover/parser.hpp"

namespace testing {

inline std::string corpus_path(const std::string& name) {
  return std::string(MOVER_SOURCE_DIR) + "/corpus/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "cannot open " << path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline mover::Program parse_ok(const std::string& text, const std::string& file = "test.mvl") {
  auto r = mover::parse(text, file);
  if (auto* errs = std::get_if<std::vector<mover::ParseError>>(&r)) {
    for (const auto& e : *errs) MESSAGE(e.str());
    FAIL("parse failed");
  }
  return std::get<mover::Program>(std::move(r));
}

inline mover::Program load(const std::string& corpus_name) {
  return parse_ok(slurp(corpus_path(corpus_name)), corpus_name);
}

inline std::string first_error(const std::string& text) {
  auto r = mover::parse(text, "bad.mvl");
  auto* errs = std::get_if<std::vector<mover::ParseError>>(&r);
  REQUIRE(errs != nullptr);
  REQUIRE(!errs->empty());
  return errs->front().str();
}

}  // namespace testing

#include "mover/action.hpp"

namespace testing {

/// The n-th action (in statement order) whose description equals `text`.
inline mover::ActionRef action(const mover::Program& p, const std::string& text, int nth = 0) {
  for (const auto& a : mover::program_actions(p))
    if (a.describe() == text && nth-- == 0) return a;
  FAIL("no action '" << text << "'");
  return {};
}

}  // namespace testing

// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "corpus_runner.hpp"

TEST_CASE("every corpus program matches its expectations") {
  const auto names = corpus::programs();
  CHECK(names.size() >= 10);
  for (const auto& name : names) {
    SUBCASE(name.c_str()) {
      auto r = corpus::run(name);
      for (const auto& m : r.mismatches) FAIL_CHECK(std::string(name + ": " + m));
      if (!r.mismatches.empty()) MESSAGE(r.text);
    }
  }
}

// SPDX-License-Identifier: Apache-2.0
// Runs a corpus program and compares it with its .expect file.
#pragma once

#include <algorithm>
#include <filesystem>
#include <memory>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "mover/checker.hpp"
#include "mover/explorer.hpp"
#include "mover/parser.hpp"
#include "mover/report.hpp"

namespace corpus {

inline std::string source_dir() { return MOVER_SOURCE_DIR; }

inline std::vector<std::string> programs() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(source_dir() + "/corpus"))
    if (e.path().extension() == ".mvl") out.push_back(e.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string read(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Run {
  std::string name;
  std::shared_ptr<mover::Program> program;
  std::unique_ptr<mover::Model> model;
  mover::VerificationReport report;
  std::string text;
  std::optional<mover::Comparison> cmp;  // holds the preemptive exploration too
  std::optional<std::vector<mover::ValidityViolation>> validity;
  std::vector<std::string> mismatches;

  const mover::ExploreResult& explored() {
    if (!cmp) cmp = mover::compare_schedulers(*model);
    return cmp->preemptive;
  }
  const mover::Comparison& compared() {
    explored();
    return *cmp;
  }
};

/// Effects of the top-level statements of a function body, space separated.
inline std::string body_effects(const mover::VerificationReport& r, const mover::FnDecl& f) {
  std::string out;
  for (const auto& s : f.body->children) {
    const mover::StmtEffect* e = r.effect_at(s->id);
    if (!out.empty()) out += ' ';
    out += e ? std::string(mover::name(e->effect)) : "?";
  }
  return out;
}

/// Checks every expectation line plus the soundness properties every
/// verified program must have. Mismatches are collected, not thrown.
inline Run run(const std::string& name) {
  Run r;
  r.name = name;
  const std::string path = source_dir() + "/corpus/" + name;
  auto parsed = mover::parse(read(path), name);
  if (!std::holds_alternative<mover::Program>(parsed)) {
    r.mismatches.push_back("does not parse");
    return r;
  }
  r.program = std::make_shared<mover::Program>(std::get<mover::Program>(std::move(parsed)));
  r.model = std::make_unique<mover::Model>(*r.program);
  r.report = mover::verify(*r.model);
  r.text = mover::render(*r.model, r.report, mover::Format::Text);

  const std::string expect = path.substr(0, path.size() - 4) + ".expect";
  std::istringstream lines(read(expect));
  if (!std::filesystem::exists(expect)) r.mismatches.push_back("missing " + expect);
  for (std::string line; std::getline(lines, line);) {
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(": ");
    const std::string key = line.substr(0, colon);
    const std::string want = colon == std::string::npos ? "" : line.substr(colon + 2);
    auto check = [&](const std::string& got) {
      if (got != want) r.mismatches.push_back(key + ": expected '" + want + "', got '" + got + "'");
    };
    if (key == "verify") {
      check(r.report.verified() ? "verified" : "failed");
    } else if (key == "explore") {
      check(r.explored().wrong ? "wrong" : "safe");
    } else if (key == "compare") {
      check(r.compared().equivalent ? "equivalent" : "different");
    } else if (key == "movers") {
      if (!r.validity) r.validity = mover::check_validity(*r.model);
      check(r.validity->empty() ? "valid" : "invalid");
    } else if (key == "rule") {
      if (!r.report.has(want)) r.mismatches.push_back("no failure with rule " + want);
    } else if (key == "contains") {
      if (r.text.find(want) == std::string::npos) r.mismatches.push_back("report lacks '" + want + "'");
    } else if (key.rfind("effects ", 0) == 0) {
      const mover::FnDecl* f = r.program->find_fn(key.substr(8));
      if (!f) r.mismatches.push_back("no function " + key.substr(8));
      else check(body_effects(r.report, *f));
    } else {
      r.mismatches.push_back("unknown expectation '" + line + "'");
    }
  }

  if (r.report.verified()) {
    if (r.explored().wrong) r.mismatches.push_back("verified but wrong is reachable");
    if (r.compared().preemptive.terminal != r.compared().nonpreemptive.terminal)
      r.mismatches.push_back("verified but the schedulers reach different terminal stores");
  }
  if (r.cmp && r.cmp->preemptive.wrong) {
    const auto rep = mover::replay(*r.model, *r.cmp->preemptive.wrong_trace);
    if (!rep.ok) r.mismatches.push_back("wrong trace does not replay: " + rep.message);
  }
  for (const auto& f : r.report.failures)
    if (f.witness.empty()) r.mismatches.push_back("failure without witness: " + f.str());
  return r;
}

}  // namespace corpus

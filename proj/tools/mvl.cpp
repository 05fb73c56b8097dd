// SPDX-License-Identifier: Apache-2.0
// mvl: verify, explore and inspect .mvl programs.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "mover/checker.hpp"
#include "mover/explorer.hpp"
#include "mover/mover.hpp"
#include "mover/parser.hpp"
#include "mover/report.hpp"
#include "mover/wellformed.hpp"

using namespace mover;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kError = 2;

struct Config {
  std::vector<std::string> files;
  std::optional<int> bits;
  std::optional<int> listdepth;
  std::optional<std::uint64_t> budget;
  Scheduler scheduler = Scheduler::Preemptive;
  bool compare = false;
  Totality totality = Totality::Global;
  Format format = Format::Text;
};

std::uint64_t default_budget() {
  if (const char* env = std::getenv("MVL_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw CLI::ValidationError("MVL_BUDGET", std::string("not a number: ") + env);
    }
  }
  return Budget::kDefault;
}

int run_one(const std::string& command, const Config& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "mvl: cannot open " << path << "\n";
    return kError;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string source = ss.str();
  auto parsed = parse(source, path);
  if (auto* errs = std::get_if<std::vector<ParseError>>(&parsed)) {
    for (const auto& e : *errs) std::cerr << e.str() << "\n";
    return kError;
  }
  const Program& p = std::get<Program>(parsed);
  if (const auto diags = well_formed(p); !diags.empty()) {
    for (const auto& d : diags) std::cerr << d.str() << "\n";
    return kError;
  }
  const Model m(p, {c.bits, c.listdepth});

  if (command == "verify" || command == "effects") {
    CheckOptions o;
    o.totality = c.totality;
    const auto r = verify(m, o);
    std::cout << (command == "verify" ? render(m, r, c.format) : render_effects(m, r, source, c.format));
    return r.verified() ? kOk : kFailed;
  }
  if (command == "explore") {
    if (c.compare) {
      const auto cmp = compare_schedulers(m);
      std::cout << render(m, cmp, c.format);
      return cmp.equivalent ? kOk : kFailed;
    }
    const auto r = explore(m, {c.scheduler, false, {}});
    std::cout << render(m, r, c.format);
    return r.wrong ? kFailed : kOk;
  }
  const auto v = check_validity(m);
  std::cout << render(m, v, c.format);
  return v.empty() ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mover logic verifier and interleaving explorer"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  Config c;

  const std::map<std::string, Scheduler> schedulers{{"preemptive", Scheduler::Preemptive},
                                                    {"nonpreemptive", Scheduler::Nonpreemptive}};
  const std::map<std::string, Totality> totalities{{"global", Totality::Global}, {"reachable", Totality::Reachable}};
  const std::map<std::string, Format> formats{{"text", Format::Text}, {"json", Format::Json}};

  auto common = [&](CLI::App* sub) {
    sub->add_option("files", c.files, ".mvl programs")->required()->check(CLI::ExistingFile);
    sub->add_option("--bits", c.bits, "integer width (overrides the program header)")->check(CLI::Range(2, 8));
    sub->add_option("--listdepth", c.listdepth, "maximum list length")->check(CLI::Range(1, 4));
    sub->add_option("--budget", c.budget, "cap on materialized stores, tuples and states (default $MVL_BUDGET)");
    sub->add_option("--format", c.format, "output format")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  };
  CLI::App* verify_cmd = app.add_subcommand("verify", "check every function and thread against its specification");
  common(verify_cmd);
  verify_cmd->add_option("--totality", c.totality, "domain of the left-mover totality check")
      ->transform(CLI::CheckedTransformer(totalities, CLI::ignore_case));
  CLI::App* explore_cmd = app.add_subcommand("explore", "enumerate interleavings and look for wrong states");
  common(explore_cmd);
  explore_cmd->add_option("--scheduler", c.scheduler, "interleaving discipline")
      ->transform(CLI::CheckedTransformer(schedulers, CLI::ignore_case));
  explore_cmd->add_flag("--compare", c.compare, "compare preemptive and nonpreemptive executions");
  common(app.add_subcommand("movers", "check validity of the mover specification"));
  CLI::App* effects_cmd = app.add_subcommand("effects", "print the source annotated with per-statement effects");
  common(effects_cmd);
  effects_cmd->add_option("--totality", c.totality, "domain of the left-mover totality check")
      ->transform(CLI::CheckedTransformer(totalities, CLI::ignore_case));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }

  int status = kOk;
  try {
    const ScopedBudget budget(c.budget ? *c.budget : default_budget());
    const std::string command = app.get_subcommands().front()->get_name();
    for (const auto& f : c.files) status = std::max(status, run_one(command, c, f));
  } catch (const BudgetExceeded& e) {
    std::cerr << "mvl: " << e.what() << " (raise it with --budget or MVL_BUDGET)\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "mvl: internal error: " << e.what() << "\n";
    return kError;
  }
  return status;
}

// SPDX-License-Identifier: Apache-2.0
#include "mover/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "mover/parser.hpp"

namespace mover {

namespace {

using json = nlohmann::ordered_json;

json span_json(const SourceSpan& s) {
  return {{"file", s.file}, {"line", s.line}, {"column", s.column}, {"text", s.str()}};
}

json failure_json(const Failure& f) {
  return {{"rule", f.rule}, {"message", f.message}, {"span", span_json(f.span)}, {"where", f.where},
          {"witness", f.witness}};
}

json effect_json(const StmtEffect& e) {
  return {{"span", span_json(e.span)}, {"statement", e.text}, {"where", e.where}, {"effect", std::string(name(e.effect))}};
}

json base(const Model& m, const std::string& verdict) {
  return {{"version", kVersion}, {"program", m.program().file}, {"verdict", verdict},
          {"failures", json::array()}, {"effects", json::array()}, {"stats", json::object()}};
}

json trace_json(const Model& m, const Trace& t) {
  const StateSpace space = StateSpace::full(m, false);
  json steps = json::array();
  for (const auto& s : t.steps) {
    const Stmt* st = m.program().stmt(s.stmt);
    steps.push_back({{"tid", s.tid}, {"rule", s.rule}, {"span", span_json(st->span)},
                     {"statement", s.branch >= 0 ? ActionRef{st, s.branch}.describe() : print_head(*st)},
                     {"delta", space.delta(s.before, s.after)}});
  }
  return {{"steps", steps}, {"end", space.render(t.end)}, {"ends_wrong", t.ends_wrong}};
}

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

json explore_stats(const ExploreResult& r) {
  return {{"scheduler", name(r.scheduler)}, {"states", r.stats.states}, {"transitions", r.stats.transitions},
          {"terminal_stores", r.terminal.size()}, {"deadlocks", r.deadlocks}, {"seconds", r.stats.seconds}};
}

// The witness of a wrong-reaching exploration as a failure entry.
json wrong_failure(const Model& m, const ExploreResult& r) {
  const Trace& t = *r.wrong_trace;
  const Stmt* last = t.steps.empty() ? nullptr : m.program().stmt(t.steps.back().stmt);
  std::vector<std::string> lines;
  std::istringstream in(dump(m, t));
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  return {{"rule", "wrong"}, {"message", std::string("wrong is reachable under the ") + name(r.scheduler) + " scheduler"},
          {"span", last ? span_json(last->span) : json(nullptr)}, {"where", "program"}, {"witness", lines}};
}

std::string explore_summary(const ExploreResult& r) {
  return std::string(name(r.scheduler)) + ": " + std::to_string(r.stats.states) + " states, " +
         std::to_string(r.stats.transitions) + " transitions, " + std::to_string(r.terminal.size()) +
         " terminal stores, " + std::to_string(r.deadlocks) + " deadlocked states, wrong " +
         (r.wrong ? "reachable" : "unreachable") + "\n";
}

}  // namespace

std::string render(const Model& m, const VerificationReport& r, Format f) {
  const std::string verdict = r.verified() ? "verified" : "failed";
  if (f == Format::Json) {
    json j = base(m, verdict);
    for (const auto& x : r.failures) j["failures"].push_back(failure_json(x));
    for (const auto& x : r.effects) j["effects"].push_back(effect_json(x));
    json fns = json::array();
    for (const auto& x : r.functions)
      fns.push_back({{"name", x.name}, {"atomic", x.atomic}, {"declared", std::string(name(x.declared))},
                     {"computed", std::string(name(x.computed))}, {"verified", x.verified}});
    j["functions"] = fns;
    j["stats"] = {{"seconds", r.stats.seconds}, {"largest_space", r.stats.largest_space},
                  {"largest_relation", r.stats.largest_relation}};
    return j.dump(2) + "\n";
  }
  std::string out = "program: " + m.program().file + "\nverdict: " + verdict;
  if (!r.verified())
    out += " (" + std::to_string(r.failures.size()) + (r.failures.size() == 1 ? " failure)" : " failures)");
  out += "\n";
  for (const auto& x : r.functions) {
    out += "  " + std::string(x.atomic ? "atomic     " : "non-atomic ") + x.name + "(): declared " +
           std::string(name(x.declared)) + ", computed " + std::string(name(x.computed)) +
           (x.verified ? "" : ", FAILED") + "\n";
  }
  for (const auto& x : r.failures) out += x.str() + "\n";
  out += "stats: " + fixed(r.stats.seconds, 3) + " s, largest space " + std::to_string(r.stats.largest_space) +
         " stores, largest relation " + std::to_string(r.stats.largest_relation) + " triples\n";
  return out;
}

std::string render(const Model& m, const ExploreResult& r, Format f) {
  const std::string verdict = r.wrong ? "wrong" : "safe";
  const StateSpace space = StateSpace::full(m, false);
  if (f == Format::Json) {
    json j = base(m, verdict);
    if (r.wrong) j["failures"].push_back(wrong_failure(m, r));
    j["stats"] = explore_stats(r);
    json term = json::array();
    for (auto s : r.terminal) term.push_back(space.render(s));
    j["terminal"] = term;
    if (r.wrong_trace) j["trace"] = trace_json(m, *r.wrong_trace);
    if (r.deadlock_trace) j["deadlock_trace"] = trace_json(m, *r.deadlock_trace);
    json flags = json::array();
    for (const auto& x : r.flags)
      flags.push_back({{"tid", x.tid}, {"span", span_json(x.span)}, {"action", x.action},
                       {"effect", std::string(name(x.effect))}, {"message", x.message}});
    j["flags"] = flags;
    return j.dump(2) + "\n";
  }
  std::string out = "program: " + m.program().file + "\nverdict: " + verdict + "\n" + explore_summary(r);
  std::size_t shown = 0;
  for (auto s : r.terminal) {
    if (shown++ == 8) {
      out += "  ... " + std::to_string(r.terminal.size() - 8) + " more\n";
      break;
    }
    out += "  terminal {" + space.render(s) + "}\n";
  }
  if (r.wrong_trace) out += "witness trace (tid | rule | statement | store change):\n" + dump(m, *r.wrong_trace);
  if (r.deadlock_trace) out += "deadlock trace:\n" + dump(m, *r.deadlock_trace);
  for (const auto& x : r.flags)
    out += "  flag: thread " + std::to_string(x.tid) + " " + x.span.str() + " " + x.action + ": " + x.message + "\n";
  return out;
}

std::string render(const Model& m, const Comparison& c, Format f) {
  const std::string verdict = c.equivalent ? "equivalent" : "different";
  if (f == Format::Json) {
    json j = base(m, verdict);
    for (const auto& d : c.differences)
      j["failures"].push_back({{"rule", "scheduler-difference"}, {"message", d}, {"span", nullptr},
                               {"where", "program"}, {"witness", json::array()}});
    j["stats"] = {{"preemptive", explore_stats(c.preemptive)}, {"nonpreemptive", explore_stats(c.nonpreemptive)}};
    return j.dump(2) + "\n";
  }
  std::string out = "program: " + m.program().file + "\nverdict: " + verdict + "\n" +
                    explore_summary(c.preemptive) + explore_summary(c.nonpreemptive);
  for (const auto& d : c.differences) out += "  difference: " + d + "\n";
  return out;
}

std::string render(const Model& m, const std::vector<ValidityViolation>& v, Format f) {
  const std::string verdict = v.empty() ? "valid" : "invalid";
  if (f == Format::Json) {
    json j = base(m, verdict);
    for (const auto& x : v)
      j["failures"].push_back({{"rule", "validity"}, {"message", "condition (" + std::to_string(x.condition) + ") fails for " + x.a1.describe() + " against " + x.a2.describe()},
                               {"span", span_json(x.a1.span())}, {"where", "program"}, {"witness", {x.str()}}});
    j["stats"] = {{"violations", v.size()}};
    return j.dump(2) + "\n";
  }
  std::string out = "program: " + m.program().file + "\nverdict: " + verdict + "\n";
  for (const auto& x : v) out += x.str() + "\n";
  return out;
}

std::string render_effects(const Model& m, const VerificationReport& r, const std::string& source, Format f) {
  const Program& p = m.program();
  // Reducible-sequence number of every statement, restarting per body.
  std::map<int, int> group;
  auto number = [&](const Stmt& body) {
    int g = 1;
    walk(body, [&](const Stmt& s) {
      if (s.kind == StmtKind::Block) return;
      group[s.id] = g;
      if (s.kind == StmtKind::Yield) ++g;
    });
  };
  for (const auto& fn : p.fns) number(*fn.body);
  for (const auto& t : p.threads) number(*t);

  // The branches an assert expands to share its span; only the assert is listed.
  std::set<int> hidden;
  auto hide = [&](const Stmt& body) {
    walk(body, [&](const Stmt& s) {
      if (s.kind == StmtKind::If && s.from_assert)
        for (const auto& c : s.children) walk(*c, [&](const Stmt& x) { hidden.insert(x.id); });
    });
  };
  for (const auto& fn : p.fns) hide(*fn.body);
  for (const auto& t : p.threads) hide(*t);

  std::map<int, std::vector<const StmtEffect*>> by_line;
  for (const auto& e : r.effects)
    if (e.span.file == p.file && !hidden.count(e.stmt)) by_line[e.span.line].push_back(&e);

  if (f == Format::Json) {
    json j = base(m, r.verified() ? "verified" : "failed");
    for (const auto& x : r.failures) j["failures"].push_back(failure_json(x));
    for (const auto& x : r.effects) {
      json e = effect_json(x);
      e["group"] = group.count(x.stmt) ? group[x.stmt] : 0;
      j["effects"].push_back(e);
    }
    j["stats"] = {{"seconds", r.stats.seconds}};
    return j.dump(2) + "\n";
  }
  std::string out;
  std::istringstream in(source);
  int line = 0;
  for (std::string text; std::getline(in, text);) {
    ++line;
    std::string effects, groups;
    auto it = by_line.find(line);
    if (it != by_line.end()) {
      for (const auto* e : it->second) {
        if (!effects.empty()) effects += ' ';
        effects += name(e->effect);
        const std::string g = group.count(e->stmt) ? std::to_string(group[e->stmt]) : "";
        if (!g.empty() && groups.find("#" + g) == std::string::npos) groups += (groups.empty() ? "#" : " #") + g;
      }
    }
    char margin[40];
    std::snprintf(margin, sizeof margin, "%-9s %-7s| ", effects.c_str(), groups.c_str());
    out += margin + text + "\n";
  }
  for (const auto& x : r.failures) out += x.str() + "\n";
  return out;
}

}  // namespace mover

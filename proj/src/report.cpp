// Copyright 2026 The IdiomForge Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "iforge/report.hpp"
#include "iforge/error.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <sstream>

namespace iforge {

using nlohmann::json;

Report run_query(const Query &query, const Isa &isa,
                 const RunOptions &options) {
  std::optional<std::set<std::string>> allow;
  if (query.allow) {
    for (const std::string &m : *query.allow)
      if (!isa.find(m))
        throw std::invalid_argument("allow lists unknown mnemonic: " + m);
    allow.emplace(query.allow->begin(), query.allow->end());
  }

  Report report;
  report.query = query;

  std::vector<Transition> transitions = instantiate(
      isa, query.registers, query.scalars, allow, options.cost_model);
  report.transition_count = transitions.size();
  if (transitions.empty())
    throw std::invalid_argument("no transitions: the ISA subset is empty");

  auto t0 = std::chrono::steady_clock::now();
  SearchResult result;
  switch (query.engine) {
  case Engine::Ids:
    result = options.threads > 1
                 ? ids_search_parallel(query.start, query.goal, transitions,
                                       query.budget, query.normalize,
                                       options.threads)
                 : ids_search(query.start, query.goal, transitions,
                              query.budget, query.normalize);
    break;
  case Engine::Bfs:
    result = bfs_search(query.start, query.goal, transitions, query.budget,
                        query.normalize);
    break;
  case Engine::Cost:
    result = cost_search(query.start, query.goal, transitions, query.budget,
                         query.normalize);
    break;
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  report.status = result.status;
  report.truncated = result.truncated;
  report.stats = result.stats;

  std::vector<Sequence> solutions = std::move(result.solutions);
  if (query.dedup)
    solutions = dedup_renames(solutions, query.scratch_registers());

  for (Sequence &seq : solutions) {
    SolutionRecord record;
    record.seq = std::move(seq);
    if (query.verify_samples > 0) {
      Verdict v = verify_sequence(query.start, query.goal, query.scalars,
                                  record.seq.instrs, isa, query.verify_samples,
                                  query.seed, options.threads);
      record.verdict = v.pass ? "pass" : "fail";
      record.counterexample = std::move(v.counterexample);
    } else {
      record.verdict = "unverified";
    }
    report.solutions.push_back(std::move(record));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Emitters
// ---------------------------------------------------------------------------

namespace {

const char *status_name(SearchStatus s) {
  switch (s) {
  case SearchStatus::Ok:
    return "ok";
  case SearchStatus::BudgetExhausted:
    return "budget_exhausted";
  case SearchStatus::MemoLimit:
    return "memo_limit";
  }
  return "?";
}

SearchStatus status_from_name(const std::string &s) {
  if (s == "ok")
    return SearchStatus::Ok;
  if (s == "budget_exhausted")
    return SearchStatus::BudgetExhausted;
  if (s == "memo_limit")
    return SearchStatus::MemoLimit;
  throw ParseError("unknown status: " + s);
}

std::string content_display(const RegisterContent &c) {
  if (c.is_opaque)
    return c.tag;
  std::string out = "[";
  for (int i = kNumLanes - 1; i >= 0; --i) {
    out += print_term(c.lanes[i]);
    if (i > 0)
      out += ',';
  }
  out += ']';
  return out;
}

std::string goal_display(const RegisterGoal &g) {
  if (!g.has_value())
    return "_";
  std::string out = "[";
  for (int i = kNumLanes - 1; i >= 0; --i) {
    out += print_term((*g)[i]);
    if (i > 0)
      out += ',';
  }
  out += ']';
  return out;
}

Lanes lanes_from_display(const std::string &text) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw ParseError("expected a lane list: " + text);
  Lanes lanes;
  std::istringstream in(text.substr(1, text.size() - 2));
  std::string item;
  int i = kNumLanes - 1;
  while (std::getline(in, item, ',')) {
    if (i < 0)
      throw ParseError("lane list too long: " + text);
    lanes[i--] = parse_term(item);
  }
  if (i != -1)
    throw ParseError("lane list too short: " + text);
  return lanes;
}

} // namespace

std::string emit_asm(const Report &report) {
  std::string out;
  const size_t n = report.solutions.size();
  if (n == 0) {
    out += "; " + report.query.name + ": no solutions (" +
           status_name(report.status) + ")\n";
    return out;
  }
  for (size_t i = 0; i < n; ++i) {
    const SolutionRecord &rec = report.solutions[i];
    out += "; " + report.query.name + ": solution " + std::to_string(i + 1) +
           " of " + std::to_string(n) + " (length " +
           std::to_string(rec.seq.length) + ", cycles " +
           std::to_string(rec.seq.total_cycles) + ", " + rec.verdict + ")\n";
    for (const Instruction &instr : rec.seq.instrs)
      out += print_instruction(instr) + "\n";
    if (i + 1 < n)
      out += "\n";
  }
  return out;
}

std::string emit_table(const Report &report) {
  std::string out = "# idioms: " + report.query.name + " (" +
                    std::to_string(report.solutions.size()) + " solutions)\n";
  for (const SolutionRecord &rec : report.solutions) {
    out += "idiom " + report.query.name + ":";
    for (size_t i = 0; i < rec.seq.instrs.size(); ++i) {
      out += i == 0 ? " " : "; ";
      out += print_instruction(rec.seq.instrs[i]);
    }
    out += "\n";
  }
  return out;
}

json report_to_json(const Report &report) {
  const Query &q = report.query;
  json jq;
  jq["name"] = q.name;
  jq["engine"] = engine_name(q.engine);
  json regs = json::array();
  for (int r : q.registers)
    regs.push_back(register_name(r));
  jq["registers"] = regs;
  jq["scalars"] = q.scalars;
  json starts = json::array();
  for (const RegisterContent &c : q.start.regs)
    starts.push_back(content_display(c));
  jq["start"] = starts;
  json goals = json::array();
  for (const RegisterGoal &g : q.goal.regs)
    goals.push_back(goal_display(g));
  jq["goal"] = goals;
  if (q.allow)
    jq["allow"] = *q.allow;
  else
    jq["allow"] = nullptr;
  jq["normalize_goal"] = q.normalize;
  jq["dedup_renames"] = q.dedup;
  if (q.budget.depth_bounded())
    jq["max_depth"] = q.budget.max_depth;
  else
    jq["max_depth"] = nullptr;
  if (q.budget.max_cost)
    jq["max_cost"] = *q.budget.max_cost;
  else
    jq["max_cost"] = nullptr;
  jq["max_solutions"] = q.budget.max_solutions;
  jq["max_states"] = q.budget.max_states;
  jq["verify_samples"] = q.verify_samples;
  jq["seed"] = q.seed;

  json out;
  out["query"] = jq;
  out["transitions"] = report.transition_count;
  out["status"] = status_name(report.status);
  out["truncated"] = report.truncated;
  out["stats"] = {{"states_expanded", report.stats.states_expanded},
                  {"transitions_applied", report.stats.transitions_applied}};
  json sols = json::array();
  for (const SolutionRecord &rec : report.solutions) {
    json js;
    json instrs = json::array();
    for (const Instruction &instr : rec.seq.instrs)
      instrs.push_back(print_instruction(instr));
    js["instructions"] = instrs;
    js["length"] = rec.seq.length;
    js["total_cycles"] = rec.seq.total_cycles;
    js["verdict"] = rec.verdict;
    if (rec.counterexample) {
      const Counterexample &c = *rec.counterexample;
      json jc;
      jc["sample_index"] = c.sample_index;
      jc["register"] = register_name(c.reg);
      jc["lane"] = c.lane;
      jc["expected"] = c.expected;
      jc["actual"] = c.actual;
      jc["assignment"] = c.assignment.values;
      js["counterexample"] = jc;
    }
    sols.push_back(js);
  }
  out["solutions"] = sols;
  return out;
}

Report report_from_json(const json &j) {
  Report report;
  const json &jq = j.at("query");
  Query &q = report.query;
  q.name = jq.at("name").get<std::string>();
  std::string engine = jq.at("engine").get<std::string>();
  if (engine == "ids")
    q.engine = Engine::Ids;
  else if (engine == "bfs")
    q.engine = Engine::Bfs;
  else if (engine == "cost")
    q.engine = Engine::Cost;
  else
    throw ParseError("unknown engine: " + engine);
  for (const auto &r : jq.at("registers")) {
    auto reg = parse_register(r.get<std::string>());
    if (!reg)
      throw ParseError("bad register in report");
    q.registers.push_back(*reg);
  }
  q.scalars = jq.at("scalars").get<std::vector<std::string>>();
  {
    const json &starts = jq.at("start");
    for (int r = 0; r < kNumRegisters; ++r) {
      std::string text = starts.at(r).get<std::string>();
      q.start.regs[r] = text.starts_with('[')
                            ? RegisterContent::packed(lanes_from_display(text))
                            : RegisterContent::opaque(text);
    }
  }
  {
    const json &goals = jq.at("goal");
    std::array<RegisterGoal, kNumRegisters> goal_regs{};
    for (int r = 0; r < kNumRegisters; ++r) {
      std::string text = goals.at(r).get<std::string>();
      if (text != "_")
        goal_regs[r] = lanes_from_display(text);
    }
    q.goal = GoalPattern::make(goal_regs);
  }
  if (!jq.at("allow").is_null())
    q.allow = jq.at("allow").get<std::vector<std::string>>();
  q.normalize = jq.at("normalize_goal").get<bool>();
  q.dedup = jq.at("dedup_renames").get<bool>();
  q.budget.max_depth =
      jq.at("max_depth").is_null() ? -1 : jq.at("max_depth").get<int>();
  if (!jq.at("max_cost").is_null())
    q.budget.max_cost = jq.at("max_cost").get<int64_t>();
  q.budget.max_solutions = jq.at("max_solutions").get<int>();
  q.budget.max_states = jq.at("max_states").get<size_t>();
  q.verify_samples = jq.at("verify_samples").get<int>();
  q.seed = jq.at("seed").get<uint32_t>();

  report.transition_count = j.at("transitions").get<size_t>();
  report.status = status_from_name(j.at("status").get<std::string>());
  report.truncated = j.at("truncated").get<bool>();
  report.stats.states_expanded =
      j.at("stats").at("states_expanded").get<uint64_t>();
  report.stats.transitions_applied =
      j.at("stats").at("transitions_applied").get<uint64_t>();
  for (const json &js : j.at("solutions")) {
    SolutionRecord rec;
    for (const json &line : js.at("instructions"))
      rec.seq.instrs.push_back(parse_instruction(line.get<std::string>()));
    rec.seq.length = js.at("length").get<int>();
    rec.seq.total_cycles = js.at("total_cycles").get<int64_t>();
    rec.verdict = js.at("verdict").get<std::string>();
    if (js.contains("counterexample")) {
      const json &jc = js.at("counterexample");
      Counterexample c;
      c.sample_index = jc.at("sample_index").get<int>();
      auto reg = parse_register(jc.at("register").get<std::string>());
      if (!reg)
        throw ParseError("bad register in counterexample");
      c.reg = *reg;
      c.lane = jc.at("lane").get<int>();
      c.expected = jc.at("expected").get<uint32_t>();
      c.actual = jc.at("actual").get<uint32_t>();
      c.assignment.values =
          jc.at("assignment").get<std::map<std::string, uint32_t>>();
      rec.counterexample = std::move(c);
    }
    report.solutions.push_back(std::move(rec));
  }
  return report;
}

std::string emit_json(const Report &report) {
  return report_to_json(report).dump(2) + "\n";
}

std::string emit(const Report &report, EmitFormat format) {
  switch (format) {
  case EmitFormat::Asm:
    return emit_asm(report);
  case EmitFormat::Json:
    return emit_json(report);
  case EmitFormat::Table:
    return emit_table(report);
  }
  return {};
}

} // namespace iforge

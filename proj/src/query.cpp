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

#include "iforge/query.hpp"
#include "iforge/error.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace iforge {

const char *engine_name(Engine e) {
  switch (e) {
  case Engine::Ids:
    return "ids";
  case Engine::Bfs:
    return "bfs";
  case Engine::Cost:
    return "cost";
  }
  return "?";
}

std::set<int> Query::scratch_registers() const {
  std::set<int> scratch;
  for (int r = 0; r < kNumRegisters; ++r)
    if (start.regs[r].is_opaque && !goal.regs[r].has_value())
      scratch.insert(r);
  return scratch;
}

namespace {

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
    --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_commas(const std::string &s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    out.push_back(trim(item));
  return out;
}

bool is_identifier(const std::string &s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0])))
    return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
      return false;
  return true;
}

bool is_reserved_symbol(const std::string &s) {
  if (s == "imm" || s == "scalar")
    return true;
  return s.size() == 2 && (s[0] == 'd' || s[0] == 's') && s[1] >= '0' &&
         s[1] <= '3';
}

int parse_reg_or_throw(const std::string &text, int line_no) {
  auto reg = parse_register(text);
  if (!reg)
    throw ParseError("expected a register xmm0..xmm7, got \"" + text + "\"",
                     line_no);
  return *reg;
}

int64_t parse_int_or_throw(const std::string &text, const std::string &what,
                           int line_no) {
  try {
    size_t consumed = 0;
    long long v = std::stoll(text, &consumed);
    if (consumed != text.size())
      throw std::invalid_argument(text);
    return v;
  } catch (const std::exception &) {
    throw ParseError("expected an integer for " + what + ", got \"" + text +
                         "\"",
                     line_no);
  }
}

bool parse_bool_or_throw(const std::string &text, const std::string &what,
                         int line_no) {
  if (text == "on" || text == "true")
    return true;
  if (text == "off" || text == "false")
    return false;
  throw ParseError("expected on/off for " + what + ", got \"" + text + "\"",
                   line_no);
}

// "[e3,e2,e1,e0]" -> four lane expressions, element 3 first in the text.
Lanes parse_lane_list(const std::string &text, bool allow_wild, int line_no) {
  std::string s = trim(text);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw ParseError("expected a [e3,e2,e1,e0] lane list, got \"" + text +
                         "\"",
                     line_no);
  std::vector<std::string> items = split_commas(s.substr(1, s.size() - 2));
  if (items.size() != kNumLanes)
    throw ParseError("lane list needs exactly 4 elements", line_no);
  Lanes lanes;
  for (int i = 0; i < kNumLanes; ++i) {
    TermPtr t;
    try {
      t = parse_term(items[i]);
    } catch (const ParseError &e) {
      throw ParseError(std::string("bad lane expression: ") + e.what(),
                       line_no);
    }
    if (!allow_wild && !t->is_ground())
      throw ParseError(
          "wildcard in a start register: start states must state all "
          "contents explicitly, otherwise the search would assume whatever "
          "initial value suits the goal",
          line_no);
    lanes[kNumLanes - 1 - i] = t; // text order is element 3 first
  }
  return lanes;
}

void collect_term_symbols(const TermPtr &t, std::set<std::string> &out) {
  switch (t->kind()) {
  case Term::Kind::Sym:
    out.insert(t->name());
    return;
  case Term::Kind::App:
    collect_term_symbols(t->lhs(), out);
    collect_term_symbols(t->rhs(), out);
    return;
  default:
    return;
  }
}

void check_lane_symbols(const Lanes &lanes, const std::string &where,
                        int line_no) {
  std::set<std::string> syms;
  for (const TermPtr &l : lanes)
    if (l)
      collect_term_symbols(l, syms);
  for (const std::string &s : syms)
    if (is_reserved_symbol(s))
      throw ParseError("symbol \"" + s + "\" in " + where +
                           " collides with a lane-selector name",
                       line_no);
}

} // namespace

Query parse_query(std::string_view text) {
  Query q;
  q.budget.max_solutions = 1;

  std::array<std::optional<RegisterContent>, kNumRegisters> start;
  std::array<RegisterGoal, kNumRegisters> goal_regs{};
  std::array<int, kNumRegisters> goal_lines{};
  bool saw_registers = false, saw_goal = false;
  std::vector<int> registers;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (auto pos = line.find('#'); pos != std::string::npos)
      line = line.substr(0, pos);
    line = trim(line);
    if (line.empty())
      continue;

    auto space = line.find_first_of(" \t");
    std::string key = space == std::string::npos ? line : line.substr(0, space);
    std::string rest =
        space == std::string::npos ? "" : trim(line.substr(space + 1));

    if (key == "name") {
      if (!is_identifier(rest))
        throw ParseError("name must be an identifier", line_no);
      q.name = rest;
    } else if (key == "registers") {
      if (saw_registers)
        throw ParseError("duplicate registers line", line_no);
      saw_registers = true;
      for (const std::string &item : split_commas(rest)) {
        int r = parse_reg_or_throw(item, line_no);
        registers.push_back(r);
      }
      std::sort(registers.begin(), registers.end());
      if (std::adjacent_find(registers.begin(), registers.end()) !=
          registers.end())
        throw ParseError("duplicate register in registers line", line_no);
      if (registers.empty())
        throw ParseError("registers line lists no registers", line_no);
    } else if (key == "start") {
      auto eq = rest.find('=');
      if (eq == std::string::npos)
        throw ParseError("expected start <reg> = ...", line_no);
      int reg = parse_reg_or_throw(trim(rest.substr(0, eq)), line_no);
      if (start[reg].has_value())
        throw ParseError("duplicate start line for " + register_name(reg),
                         line_no);
      std::string value = trim(rest.substr(eq + 1));
      if (value == "_")
        throw ParseError(
            "wildcard in a start register: start states must state all "
            "contents explicitly, otherwise the search would assume whatever "
            "initial value suits the goal",
            line_no);
      if (value.rfind("opaque", 0) == 0 &&
          (value.size() == 6 ||
           std::isspace(static_cast<unsigned char>(value[6])))) {
        std::string tag = trim(value.substr(6));
        if (!is_identifier(tag))
          throw ParseError("opaque needs an identifier tag", line_no);
        start[reg] = RegisterContent::opaque(tag);
      } else {
        Lanes lanes = parse_lane_list(value, /*allow_wild=*/false, line_no);
        check_lane_symbols(lanes, "a start register", line_no);
        start[reg] = RegisterContent::packed(lanes);
      }
    } else if (key == "scalars") {
      for (const std::string &item : split_commas(rest)) {
        if (!is_identifier(item))
          throw ParseError("scalar names must be identifiers", line_no);
        if (is_reserved_symbol(item))
          throw ParseError("scalar name \"" + item +
                               "\" collides with a lane-selector name",
                           line_no);
        q.scalars.push_back(item);
      }
    } else if (key == "goal") {
      auto eq = rest.find('=');
      if (eq == std::string::npos)
        throw ParseError("expected goal <reg> = [..]", line_no);
      int reg = parse_reg_or_throw(trim(rest.substr(0, eq)), line_no);
      if (goal_regs[reg].has_value())
        throw ParseError("duplicate goal line for " + register_name(reg),
                         line_no);
      Lanes lanes =
          parse_lane_list(trim(rest.substr(eq + 1)), /*allow_wild=*/true,
                          line_no);
      check_lane_symbols(lanes, "a goal register", line_no);
      goal_regs[reg] = lanes;
      goal_lines[reg] = line_no;
      saw_goal = true;
    } else if (key == "allow") {
      std::vector<std::string> names = split_commas(rest);
      for (const std::string &n : names)
        if (!is_identifier(n))
          throw ParseError("allow expects mnemonics", line_no);
      q.allow = names;
    } else if (key == "engine") {
      if (rest == "ids")
        q.engine = Engine::Ids;
      else if (rest == "bfs")
        q.engine = Engine::Bfs;
      else if (rest == "cost")
        q.engine = Engine::Cost;
      else
        throw ParseError("engine must be ids, bfs or cost", line_no);
    } else if (key == "max_depth") {
      int64_t v = parse_int_or_throw(rest, "max_depth", line_no);
      if (v < 0)
        throw ParseError("max_depth must be nonnegative", line_no);
      q.budget.max_depth = static_cast<int>(v);
    } else if (key == "max_cost") {
      int64_t v = parse_int_or_throw(rest, "max_cost", line_no);
      if (v < 0)
        throw ParseError("max_cost must be nonnegative", line_no);
      q.budget.max_cost = v;
    } else if (key == "max_solutions") {
      int64_t v = parse_int_or_throw(rest, "max_solutions", line_no);
      if (v <= 0)
        throw ParseError("max_solutions must be positive", line_no);
      q.budget.max_solutions = static_cast<int>(v);
    } else if (key == "max_states") {
      int64_t v = parse_int_or_throw(rest, "max_states", line_no);
      if (v <= 0)
        throw ParseError("max_states must be positive", line_no);
      q.budget.max_states = static_cast<size_t>(v);
    } else if (key == "verify_samples") {
      int64_t v = parse_int_or_throw(rest, "verify_samples", line_no);
      if (v < 0)
        throw ParseError("verify_samples must be nonnegative", line_no);
      q.verify_samples = static_cast<int>(v);
    } else if (key == "seed") {
      q.seed = static_cast<uint32_t>(
          parse_int_or_throw(rest, "seed", line_no));
    } else if (key == "normalize") {
      q.normalize = parse_bool_or_throw(rest, "normalize", line_no);
    } else if (key == "dedup_renames") {
      q.dedup = parse_bool_or_throw(rest, "dedup_renames", line_no);
    } else {
      throw ParseError("unknown query key \"" + key + "\"", line_no);
    }
  }

  if (q.name.empty())
    throw ParseError("query needs a name line", line_no);
  if (!saw_goal)
    throw ParseError("query needs at least one goal line", line_no);

  if (!saw_registers)
    for (int r = 0; r < kNumRegisters; ++r)
      registers.push_back(r);
  q.registers = registers;

  // Unspecified registers hold unusable, unrelated initial values.
  for (int r = 0; r < kNumRegisters; ++r)
    q.start.regs[r] = start[r].has_value()
                          ? *start[r]
                          : RegisterContent::opaque(register_name(r));

  std::set<std::string> tags;
  for (int r = 0; r < kNumRegisters; ++r)
    if (q.start.regs[r].is_opaque && !tags.insert(q.start.regs[r].tag).second)
      throw ParseError("duplicate opaque tag \"" + q.start.regs[r].tag + "\"",
                       -1);

  q.goal = GoalPattern::make(goal_regs);

  // Goal constraints must target declared registers and known symbols.
  std::set<int> reg_set(q.registers.begin(), q.registers.end());
  std::set<std::string> known(q.scalars.begin(), q.scalars.end());
  for (const RegisterContent &c : q.start.regs)
    if (!c.is_opaque)
      for (const TermPtr &lane : c.lanes)
        collect_term_symbols(lane, known);
  for (int r = 0; r < kNumRegisters; ++r) {
    if (!q.goal.regs[r].has_value())
      continue;
    if (!reg_set.count(r))
      throw ParseError("goal constrains " + register_name(r) +
                           " which is not in the registers line",
                       goal_lines[r]);
    std::set<std::string> goal_syms;
    for (const TermPtr &lane : *q.goal.regs[r])
      collect_term_symbols(lane, goal_syms);
    for (const std::string &s : goal_syms)
      if (!known.count(s))
        throw ParseError("goal references undeclared symbol \"" + s + "\"",
                         goal_lines[r]);
  }

  if ((q.engine == Engine::Ids || q.engine == Engine::Bfs) &&
      !q.budget.depth_bounded())
    throw ParseError(std::string(engine_name(q.engine)) +
                         " engine requires max_depth",
                     -1);
  if (q.engine == Engine::Cost && !q.budget.depth_bounded() &&
      !q.budget.max_cost)
    throw ParseError("cost engine requires max_depth or max_cost", -1);

  return q;
}

} // namespace iforge

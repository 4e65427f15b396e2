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

#include "iforge/machine.hpp"

#include <set>
#include <stdexcept>

namespace iforge {

RegisterContent RegisterContent::opaque(std::string tag) {
  RegisterContent c;
  c.is_opaque = true;
  c.tag = std::move(tag);
  return c;
}

RegisterContent RegisterContent::packed(Lanes lanes) {
  RegisterContent c;
  c.is_opaque = false;
  c.lanes = std::move(lanes);
  return c;
}

bool content_equal(const RegisterContent &a, const RegisterContent &b) {
  if (a.is_opaque != b.is_opaque)
    return false;
  if (a.is_opaque)
    return a.tag == b.tag;
  for (int i = 0; i < kNumLanes; ++i)
    if (!term_equal(a.lanes[i], b.lanes[i]))
      return false;
  return true;
}

bool states_equal(const MachineState &a, const MachineState &b) {
  for (int r = 0; r < kNumRegisters; ++r)
    if (!content_equal(a.regs[r], b.regs[r]))
      return false;
  return true;
}

MachineState opaque_start(const std::array<std::string, kNumRegisters> &tags) {
  std::set<std::string> seen;
  for (const auto &tag : tags)
    if (!seen.insert(tag).second)
      throw std::invalid_argument("duplicate opaque tag: " + tag);
  MachineState s;
  for (int r = 0; r < kNumRegisters; ++r)
    s.regs[r] = RegisterContent::opaque(tags[r]);
  return s;
}

namespace {

void append_content(std::string &out, const RegisterContent &c,
                    bool display) {
  if (c.is_opaque) {
    if (!display)
      out += 'O';
    out += c.tag;
    return;
  }
  if (!display)
    out += 'P';
  out += '[';
  for (int i = kNumLanes - 1; i >= 0; --i) {
    out += print_term(c.lanes[i]);
    if (i > 0)
      out += ',';
  }
  out += ']';
}

} // namespace

std::string state_key(const MachineState &s) {
  std::string key;
  key.reserve(64);
  for (int r = 0; r < kNumRegisters; ++r) {
    append_content(key, s.regs[r], /*display=*/false);
    key += ';';
  }
  return key;
}

std::string print_state(const MachineState &s) {
  std::string out = "[ ";
  for (int r = 0; r < kNumRegisters; ++r) {
    append_content(out, s.regs[r], /*display=*/true);
    if (r + 1 < kNumRegisters)
      out += ", ";
  }
  out += " ]";
  return out;
}

GoalPattern GoalPattern::make(std::array<RegisterGoal, kNumRegisters> regs) {
  bool constrained = false;
  for (const auto &g : regs)
    constrained = constrained || g.has_value();
  if (!constrained)
    throw std::invalid_argument("goal pattern constrains no register");
  GoalPattern p;
  p.regs = std::move(regs);
  return p;
}

bool match_goal(const MachineState &s, const GoalPattern &goal,
                bool normalize) {
  for (int r = 0; r < kNumRegisters; ++r) {
    const RegisterGoal &g = goal.regs[r];
    if (!g.has_value())
      continue;
    const RegisterContent &c = s.regs[r];
    if (c.is_opaque)
      return false;
    for (int i = 0; i < kNumLanes; ++i) {
      TermPtr pattern = (*g)[i];
      TermPtr subject = c.lanes[i];
      if (normalize) {
        pattern = normalize_ac(pattern);
        subject = normalize_ac(subject);
      }
      if (!match_term(pattern, subject))
        return false;
    }
  }
  return true;
}

std::string print_goal(const GoalPattern &goal) {
  std::string out = "[ ";
  for (int r = 0; r < kNumRegisters; ++r) {
    if (!goal.regs[r].has_value()) {
      out += '_';
    } else {
      out += '[';
      for (int i = kNumLanes - 1; i >= 0; --i) {
        out += print_term((*goal.regs[r])[i]);
        if (i > 0)
          out += ',';
      }
      out += ']';
    }
    if (r + 1 < kNumRegisters)
      out += ", ";
  }
  out += " ]";
  return out;
}

std::string register_name(int index) {
  return "xmm" + std::to_string(index);
}

std::optional<int> parse_register(std::string_view text) {
  if (text.size() != 4 || text.substr(0, 3) != "xmm")
    return std::nullopt;
  char c = text[3];
  if (c < '0' || c > '7')
    return std::nullopt;
  return c - '0';
}

} // namespace iforge

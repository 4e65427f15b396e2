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

#include "iforge/isa.hpp"
#include "iforge/error.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace iforge {

namespace {

// Selector names d0..d3 / s0..s3; -1 when not a selector.
int selector_index(const std::string &name, char prefix) {
  if (name.size() == 2 && name[0] == prefix && name[1] >= '0' && name[1] <= '3')
    return name[1] - '0';
  return -1;
}

struct SelectorUsage {
  bool dest = false;
  bool src = false;
  bool imm = false;
  bool scalar = false;
  bool wild = false;
  std::string other; // first non-selector identifier, if any
};

void collect_usage(const TermPtr &t, SelectorUsage &u) {
  switch (t->kind()) {
  case Term::Kind::Sym: {
    const std::string &n = t->name();
    if (selector_index(n, 'd') >= 0)
      u.dest = true;
    else if (selector_index(n, 's') >= 0)
      u.src = true;
    else if (n == "imm")
      u.imm = true;
    else if (n == "scalar")
      u.scalar = true;
    else if (u.other.empty())
      u.other = n;
    return;
  }
  case Term::Kind::Wild:
    u.wild = true;
    return;
  case Term::Kind::App:
    collect_usage(t->lhs(), u);
    collect_usage(t->rhs(), u);
    return;
  default:
    return;
  }
}

SelectorUsage lane_usage(const Lanes &lanes) {
  SelectorUsage u;
  for (const auto &l : lanes)
    collect_usage(l, u);
  return u;
}

// Substitutes selected symbols and refolds applications bottom-up.
TermPtr subst_fold(const TermPtr &t,
                   const std::function<TermPtr(const std::string &)> &lookup) {
  switch (t->kind()) {
  case Term::Kind::Sym:
    if (TermPtr bound = lookup(t->name()))
      return bound;
    return t;
  case Term::Kind::App:
    return fold_binop(t->op(), subst_fold(t->lhs(), lookup),
                      subst_fold(t->rhs(), lookup));
  default:
    return t;
  }
}

Lanes specialize_lanes(const Lanes &lanes,
                       const std::function<TermPtr(const std::string &)> &lookup) {
  Lanes out;
  for (int i = 0; i < kNumLanes; ++i)
    out[i] = subst_fold(lanes[i], lookup);
  return out;
}

// Evaluates the aliased (dst = src) case over fresh per-element symbols.
// The '#' prefix cannot collide with parseable identifiers.
Lanes aliased_fold(const Lanes &lanes) {
  std::array<TermPtr, kNumLanes> fresh;
  for (int i = 0; i < kNumLanes; ++i)
    fresh[i] = Term::symbol("#a" + std::to_string(i));
  return specialize_lanes(lanes, [&](const std::string &n) -> TermPtr {
    int di = selector_index(n, 'd');
    if (di >= 0)
      return fresh[di];
    int si = selector_index(n, 's');
    if (si >= 0)
      return fresh[si];
    return nullptr;
  });
}

bool lanes_are_identity(const Lanes &folded) {
  for (int i = 0; i < kNumLanes; ++i) {
    const TermPtr &t = folded[i];
    if (!t->is_sym() || t->name() != "#a" + std::to_string(i))
      return false;
  }
  return true;
}

bool lanes_all_int(const Lanes &folded) {
  return std::all_of(folded.begin(), folded.end(),
                     [](const TermPtr &t) { return t->is_int(); });
}

} // namespace

bool lane_independent(const InstructionTemplate &tmpl) {
  if (tmpl.form != Form::RR || !tmpl.has_generic_lanes)
    return false;
  return lanes_all_int(aliased_fold(tmpl.lanes));
}

const InstructionTemplate *Isa::find(std::string_view mnemonic) const {
  for (const auto &t : templates)
    if (t.mnemonic == mnemonic)
      return &t;
  return nullptr;
}

// ---------------------------------------------------------------------------
// ISA description parser
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_ws(const std::string &line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok)
    tokens.push_back(tok);
  return tokens;
}

std::string strip_comment(const std::string &line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

int parse_positive_int(const std::string &text, const std::string &what,
                       int line_no) {
  try {
    size_t consumed = 0;
    int v = std::stoi(text, &consumed);
    if (consumed != text.size() || v <= 0)
      throw std::invalid_argument(text);
    return v;
  } catch (const std::exception &) {
    throw ParseError("expected positive integer for " + what + ", got \"" +
                         text + "\"",
                     line_no);
  }
}

struct PendingTemplate {
  InstructionTemplate tmpl;
  int decl_line = 0;
  bool saw_lane_line = false;
};

TermPtr parse_lane_expr(const std::string &text, int line_no) {
  try {
    return parse_term(text);
  } catch (const ParseError &e) {
    throw ParseError(std::string("bad lane expression: ") + e.what(), line_no);
  }
}

void validate_lane_set(const Lanes &lanes, Form form, bool generic,
                       const std::string &mnemonic, int line_no) {
  SelectorUsage u = lane_usage(lanes);
  if (u.wild)
    throw ParseError("wildcard is not allowed in lane expressions of " +
                         mnemonic,
                     line_no);
  if (!u.other.empty())
    throw ParseError("unknown identifier \"" + u.other +
                         "\" in lane expressions of " + mnemonic +
                         " (selectors are d0..d3, s0..s3, imm, scalar)",
                     line_no);
  if (u.src && form != Form::RR)
    throw ParseError("source selectors require form=rr in " + mnemonic,
                     line_no);
  if (u.imm && !(form == Form::RI && generic))
    throw ParseError("`imm` requires form=ri in " + mnemonic, line_no);
  if (u.scalar && form != Form::RS)
    throw ParseError("`scalar` requires form=rs in " + mnemonic, line_no);
}

void finish_template(PendingTemplate &p, Isa &isa) {
  InstructionTemplate &t = p.tmpl;
  const int line = p.decl_line;
  if (!p.saw_lane_line)
    throw ParseError("instruction " + t.mnemonic + " has no lane expressions",
                     line);
  if (t.form == Form::RI) {
    if (t.imms.empty())
      throw ParseError("form=ri requires a nonempty imms= set in " +
                           t.mnemonic,
                       line);
    if (t.has_generic_lanes && !t.imm_lanes.empty())
      throw ParseError("mix of generic and per-immediate lane lines in " +
                           t.mnemonic,
                       line);
    if (!t.has_generic_lanes) {
      for (int imm : t.imms)
        if (!t.imm_lanes.count(imm))
          throw ParseError("missing lane line for imm=" + std::to_string(imm) +
                               " in " + t.mnemonic,
                           line);
      if (t.imm_lanes.size() != t.imms.size())
        throw ParseError("lane line for an undeclared immediate in " +
                             t.mnemonic,
                         line);
    }
  } else {
    if (!t.imms.empty())
      throw ParseError("imms= is only valid with form=ri in " + t.mnemonic,
                       line);
    if (!t.imm_lanes.empty())
      throw ParseError("imm= lane lines are only valid with form=ri in " +
                           t.mnemonic,
                       line);
    if (!t.has_generic_lanes)
      throw ParseError("instruction " + t.mnemonic + " has no lane expressions",
                       line);
  }
  if (t.wholecopy) {
    if (t.form != Form::RR)
      throw ParseError("wholecopy requires form=rr in " + t.mnemonic, line);
    for (int i = 0; i < kNumLanes; ++i) {
      const TermPtr &l = t.lanes[i];
      if (!l || !l->is_sym() || selector_index(l->name(), 's') != i)
        throw ParseError("wholecopy lanes must be exactly e_i=s_i in " +
                             t.mnemonic,
                         line);
    }
  }

  // Selector usage over every lane set.
  SelectorUsage u;
  if (t.has_generic_lanes)
    u = lane_usage(t.lanes);
  for (const auto &[imm, lanes] : t.imm_lanes) {
    SelectorUsage iu = lane_usage(lanes);
    u.dest = u.dest || iu.dest;
    u.src = u.src || iu.src;
  }
  t.reads_dest = u.dest;
  t.reads_src = u.src;

  if (t.form == Form::RR && t.has_generic_lanes) {
    Lanes folded = aliased_fold(t.lanes);
    t.aliased_noop = lanes_are_identity(folded);
    t.aliased_const = lanes_all_int(folded);
    if (t.aliased_const)
      t.aliased_lanes = folded;
  }

  if (isa.find(t.mnemonic))
    throw ParseError("duplicate mnemonic " + t.mnemonic, line);
  isa.templates.push_back(std::move(t));
}

} // namespace

Isa parse_isa(std::string_view text) {
  Isa isa;
  std::optional<PendingTemplate> pending;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip_comment(raw);
    std::vector<std::string> tokens = split_ws(line);
    if (tokens.empty())
      continue;

    if (tokens[0] == "inst") {
      if (pending)
        finish_template(*pending, isa);
      pending.emplace();
      pending->decl_line = line_no;
      InstructionTemplate &t = pending->tmpl;
      if (tokens.size() < 2)
        throw ParseError("inst line needs a mnemonic", line_no);
      t.mnemonic = tokens[1];
      bool saw_form = false, saw_cycles = false;
      for (size_t i = 2; i < tokens.size(); ++i) {
        const std::string &tok = tokens[i];
        if (tok == "wholecopy") {
          t.wholecopy = true;
        } else if (tok.rfind("form=", 0) == 0) {
          std::string f = tok.substr(5);
          if (f == "rr")
            t.form = Form::RR;
          else if (f == "ri")
            t.form = Form::RI;
          else if (f == "rs")
            t.form = Form::RS;
          else
            throw ParseError("unknown form \"" + f + "\"", line_no);
          saw_form = true;
        } else if (tok.rfind("cycles=", 0) == 0) {
          t.cycles = parse_positive_int(tok.substr(7), "cycles", line_no);
          saw_cycles = true;
        } else if (tok.rfind("imms=", 0) == 0) {
          std::istringstream imms(tok.substr(5));
          std::string item;
          while (std::getline(imms, item, ','))
            t.imms.push_back(parse_positive_int(item, "imms", line_no));
          if (t.imms.empty())
            throw ParseError("empty imms= set", line_no);
          std::set<int> uniq(t.imms.begin(), t.imms.end());
          if (uniq.size() != t.imms.size())
            throw ParseError("duplicate immediate in imms=", line_no);
        } else {
          throw ParseError("unknown token \"" + tok + "\" on inst line",
                           line_no);
        }
      }
      if (!saw_form)
        throw ParseError("inst line needs form=", line_no);
      if (!saw_cycles)
        throw ParseError("inst line needs cycles=", line_no);
      continue;
    }

    // Lane line, belongs to the current template.
    if (!pending)
      throw ParseError("lane expressions before any inst line", line_no);
    InstructionTemplate &t = pending->tmpl;
    size_t idx = 0;
    std::optional<int> imm_key;
    if (tokens[0].rfind("imm=", 0) == 0) {
      imm_key = parse_positive_int(tokens[0].substr(4), "imm", line_no);
      idx = 1;
    }
    Lanes lanes{};
    std::array<bool, kNumLanes> seen{};
    for (; idx < tokens.size(); ++idx) {
      const std::string &tok = tokens[idx];
      if (tok.size() < 3 || tok[0] != 'e' || tok[1] < '0' || tok[1] > '3' ||
          tok[2] != '=')
        throw ParseError("expected e3=..e0= lane assignments, got \"" + tok +
                             "\"",
                         line_no);
      int lane = tok[1] - '0';
      if (seen[lane])
        throw ParseError("duplicate lane e" + std::to_string(lane), line_no);
      seen[lane] = true;
      lanes[lane] = parse_lane_expr(tok.substr(3), line_no);
    }
    for (int i = 0; i < kNumLanes; ++i)
      if (!seen[i])
        throw ParseError("missing lane e" + std::to_string(i), line_no);
    validate_lane_set(lanes, t.form, /*generic=*/!imm_key.has_value(),
                      t.mnemonic, line_no);
    if (imm_key) {
      if (t.form != Form::RI)
        throw ParseError("imm= lane line is only valid with form=ri",
                         line_no);
      if (std::find(t.imms.begin(), t.imms.end(), *imm_key) == t.imms.end())
        throw ParseError("imm=" + std::to_string(*imm_key) +
                             " is not in the declared imms= set",
                         line_no);
      if (t.imm_lanes.count(*imm_key))
        throw ParseError("duplicate lane line for imm=" +
                             std::to_string(*imm_key),
                         line_no);
      t.imm_lanes[*imm_key] = lanes;
    } else {
      if (t.has_generic_lanes)
        throw ParseError("duplicate lane line for " + t.mnemonic, line_no);
      t.lanes = lanes;
      t.has_generic_lanes = true;
    }
    pending->saw_lane_line = true;
  }
  if (pending)
    finish_template(*pending, isa);
  return isa;
}

// ---------------------------------------------------------------------------
// Instructions
// ---------------------------------------------------------------------------

bool instruction_equal(const Instruction &a, const Instruction &b) {
  if (a.mnemonic != b.mnemonic || a.dst != b.dst || a.src_kind != b.src_kind)
    return false;
  switch (a.src_kind) {
  case Instruction::SrcKind::Reg:
    return a.src_reg == b.src_reg;
  case Instruction::SrcKind::Imm:
    return a.imm == b.imm;
  case Instruction::SrcKind::Scalar:
    return a.scalar == b.scalar;
  }
  return false;
}

std::string print_instruction(const Instruction &instr) {
  std::string out = instr.mnemonic + " " + register_name(instr.dst) + ", ";
  switch (instr.src_kind) {
  case Instruction::SrcKind::Reg:
    out += register_name(instr.src_reg);
    break;
  case Instruction::SrcKind::Imm:
    out += std::to_string(instr.imm);
    break;
  case Instruction::SrcKind::Scalar:
    out += instr.scalar;
    break;
  }
  return out;
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

} // namespace

Instruction parse_instruction(std::string_view text) {
  std::string s = trim(text);
  auto space = s.find(' ');
  if (space == std::string::npos)
    throw ParseError("expected \"<mnemonic> <dst>, <src>\": " + s);
  Instruction instr;
  instr.mnemonic = s.substr(0, space);
  std::string rest = trim(s.substr(space + 1));
  auto comma = rest.find(',');
  if (comma == std::string::npos)
    throw ParseError("expected two comma-separated operands: " + s);
  std::string dst = trim(rest.substr(0, comma));
  std::string src = trim(rest.substr(comma + 1));
  auto dreg = parse_register(dst);
  if (!dreg)
    throw ParseError("destination must be xmm0..xmm7: " + dst);
  instr.dst = *dreg;
  if (auto sreg = parse_register(src)) {
    instr.src_kind = Instruction::SrcKind::Reg;
    instr.src_reg = *sreg;
  } else if (!src.empty() &&
             (std::isdigit(static_cast<unsigned char>(src[0])) ||
              src[0] == '-')) {
    instr.src_kind = Instruction::SrcKind::Imm;
    try {
      size_t consumed = 0;
      instr.imm = std::stoi(src, &consumed);
      if (consumed != src.size())
        throw std::invalid_argument(src);
    } catch (const std::exception &) {
      throw ParseError("bad immediate operand: " + src);
    }
  } else if (!src.empty()) {
    instr.src_kind = Instruction::SrcKind::Scalar;
    instr.scalar = src;
  } else {
    throw ParseError("missing source operand: " + s);
  }
  return instr;
}

// ---------------------------------------------------------------------------
// Cost model
// ---------------------------------------------------------------------------

int CostModel::lookup(const std::string &mnemonic) const {
  auto it = cycles.find(mnemonic);
  return it == cycles.end() ? 1 : it->second;
}

CostModel parse_cost_model(std::string_view text) {
  CostModel model;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::vector<std::string> tokens = split_ws(strip_comment(raw));
    if (tokens.empty())
      continue;
    if (tokens.size() != 3 || tokens[0] != "cycles")
      throw ParseError("expected \"cycles <mnemonic> <positive-int>\"",
                       line_no);
    int v = parse_positive_int(tokens[2], "cycles", line_no);
    if (!model.cycles.emplace(tokens[1], v).second)
      throw ParseError("duplicate cost entry for " + tokens[1], line_no);
  }
  return model;
}

// ---------------------------------------------------------------------------
// Instantiation
// ---------------------------------------------------------------------------

namespace {

Transition make_rr(const InstructionTemplate &tmpl, int dst, int src,
                   int cycles) {
  Transition t;
  t.instr.mnemonic = tmpl.mnemonic;
  t.instr.dst = dst;
  t.instr.src_kind = Instruction::SrcKind::Reg;
  t.instr.src_reg = src;
  t.cycles = cycles;
  if (tmpl.wholecopy) {
    t.wholecopy = true;
    return t;
  }
  if (dst == src) {
    if (tmpl.aliased_const) {
      t.const_result = true;
      t.lanes = tmpl.aliased_lanes;
      return t;
    }
    bool reads = tmpl.reads_dest || tmpl.reads_src;
    t.reads_dest = reads;
    t.reads_src = reads;
    t.lanes = tmpl.lanes;
    return t;
  }
  t.reads_dest = tmpl.reads_dest;
  t.reads_src = tmpl.reads_src;
  t.lanes = tmpl.lanes;
  return t;
}

Transition make_ri(const InstructionTemplate &tmpl, int dst, int imm,
                   int cycles) {
  Transition t;
  t.instr.mnemonic = tmpl.mnemonic;
  t.instr.dst = dst;
  t.instr.src_kind = Instruction::SrcKind::Imm;
  t.instr.imm = imm;
  t.cycles = cycles;
  if (!tmpl.imm_lanes.empty()) {
    t.lanes = tmpl.imm_lanes.at(imm);
  } else {
    TermPtr imm_term = Term::integer(imm);
    t.lanes = specialize_lanes(tmpl.lanes, [&](const std::string &n) {
      return n == "imm" ? imm_term : nullptr;
    });
  }
  t.reads_dest = lane_usage(t.lanes).dest;
  return t;
}

Transition make_rs(const InstructionTemplate &tmpl, int dst,
                   const std::string &scalar, int cycles) {
  Transition t;
  t.instr.mnemonic = tmpl.mnemonic;
  t.instr.dst = dst;
  t.instr.src_kind = Instruction::SrcKind::Scalar;
  t.instr.scalar = scalar;
  t.cycles = cycles;
  TermPtr scalar_term = Term::symbol(scalar);
  t.lanes = specialize_lanes(tmpl.lanes, [&](const std::string &n) {
    return n == "scalar" ? scalar_term : nullptr;
  });
  t.reads_dest = lane_usage(t.lanes).dest;
  return t;
}

} // namespace

std::vector<Transition>
instantiate(const Isa &isa, const std::vector<int> &allowed_regs,
            const std::vector<std::string> &scalar_pool,
            const std::optional<std::set<std::string>> &allow,
            const CostModel *costs) {
  if (allowed_regs.empty())
    throw std::invalid_argument("allowed register set is empty");
  std::vector<int> regs = allowed_regs;
  std::sort(regs.begin(), regs.end());
  regs.erase(std::unique(regs.begin(), regs.end()), regs.end());
  if (regs.front() < 0 || regs.back() >= kNumRegisters)
    throw std::invalid_argument("register index out of range");

  std::vector<Transition> out;
  for (const auto &tmpl : isa.templates) {
    if (allow && !allow->count(tmpl.mnemonic))
      continue;
    int cycles = costs ? costs->lookup(tmpl.mnemonic) : tmpl.cycles;
    switch (tmpl.form) {
    case Form::RR:
      for (int dst : regs)
        for (int src : regs) {
          if (dst == src && tmpl.aliased_noop)
            continue;
          out.push_back(make_rr(tmpl, dst, src, cycles));
        }
      break;
    case Form::RI:
      for (int dst : regs)
        for (int imm : tmpl.imms)
          out.push_back(make_ri(tmpl, dst, imm, cycles));
      break;
    case Form::RS:
      for (int dst : regs)
        for (const std::string &scalar : scalar_pool)
          out.push_back(make_rs(tmpl, dst, scalar, cycles));
      break;
    }
  }
  return out;
}

std::optional<MachineState> apply_transition(const Transition &t,
                                             const MachineState &s) {
  const int dst = t.instr.dst;
  MachineState out = s;
  if (t.wholecopy) {
    out.regs[dst] = s.regs[t.instr.src_reg];
    return out;
  }
  if (t.const_result) {
    out.regs[dst] = RegisterContent::packed(t.lanes);
    return out;
  }
  const RegisterContent &dreg = s.regs[dst];
  const RegisterContent *sreg = t.instr.src_kind == Instruction::SrcKind::Reg
                                    ? &s.regs[t.instr.src_reg]
                                    : nullptr;
  if (t.reads_dest && dreg.is_opaque)
    return std::nullopt;
  if (t.reads_src && sreg && sreg->is_opaque)
    return std::nullopt;

  Lanes result;
  for (int i = 0; i < kNumLanes; ++i)
    result[i] = subst_fold(t.lanes[i], [&](const std::string &n) -> TermPtr {
      int di = selector_index(n, 'd');
      if (di >= 0)
        return dreg.lanes[di];
      int si = selector_index(n, 's');
      if (si >= 0)
        return sreg->lanes[si];
      return nullptr;
    });
  out.regs[dst] = RegisterContent::packed(std::move(result));
  return out;
}

std::optional<MachineState> apply_instruction(const Instruction &instr,
                                              const MachineState &s,
                                              const Isa &isa) {
  const InstructionTemplate *tmpl = isa.find(instr.mnemonic);
  if (!tmpl)
    throw std::invalid_argument("unknown mnemonic: " + instr.mnemonic);
  switch (instr.src_kind) {
  case Instruction::SrcKind::Reg:
    if (tmpl->form != Form::RR)
      throw std::invalid_argument(instr.mnemonic +
                                  " does not take a register source");
    return apply_transition(make_rr(*tmpl, instr.dst, instr.src_reg,
                                    tmpl->cycles),
                            s);
  case Instruction::SrcKind::Imm:
    if (tmpl->form != Form::RI)
      throw std::invalid_argument(instr.mnemonic +
                                  " does not take an immediate");
    if (std::find(tmpl->imms.begin(), tmpl->imms.end(), instr.imm) ==
        tmpl->imms.end())
      throw std::invalid_argument("immediate " + std::to_string(instr.imm) +
                                  " is not declared for " + instr.mnemonic);
    return apply_transition(make_ri(*tmpl, instr.dst, instr.imm, tmpl->cycles),
                            s);
  case Instruction::SrcKind::Scalar:
    if (tmpl->form != Form::RS)
      throw std::invalid_argument(instr.mnemonic + " does not take a scalar");
    return apply_transition(
        make_rs(*tmpl, instr.dst, instr.scalar, tmpl->cycles), s);
  }
  return std::nullopt;
}

} // namespace iforge

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

#include "iforge/verify.hpp"

#include <random>
#include <set>
#include <stdexcept>

namespace iforge {

uint32_t Assignment::lookup(const std::string &name) const {
  auto it = values.find(name);
  if (it == values.end())
    throw std::out_of_range("unknown symbol: " + name);
  return it->second;
}

std::string opaque_lane_key(const std::string &tag, int lane) {
  return tag + "#" + std::to_string(lane);
}

namespace {

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

} // namespace

std::vector<std::string>
collect_symbols(const MachineState &start,
                const std::vector<std::string> &scalars) {
  std::set<std::string> names;
  for (const RegisterContent &reg : start.regs) {
    if (reg.is_opaque) {
      for (int i = 0; i < kNumLanes; ++i)
        names.insert(opaque_lane_key(reg.tag, i));
    } else {
      for (const TermPtr &lane : reg.lanes)
        collect_term_symbols(lane, names);
    }
  }
  names.insert(scalars.begin(), scalars.end());
  return {names.begin(), names.end()};
}

ConcreteState concretize(const MachineState &start, const Assignment &asg) {
  ConcreteState out{};
  for (int r = 0; r < kNumRegisters; ++r) {
    const RegisterContent &reg = start.regs[r];
    for (int i = 0; i < kNumLanes; ++i)
      out[r][i] = reg.is_opaque
                      ? asg.lookup(opaque_lane_key(reg.tag, i))
                      : eval_term(reg.lanes[i], asg.values);
  }
  return out;
}

namespace {

// Numeric evaluation of a lane expression. This is the interpreter's own
// recursion over selectors and literals; the only code shared with the
// symbolic path is the operator arithmetic in eval_op.
uint32_t eval_lane(const TermPtr &expr, const ConcreteLanes &dst,
                   const ConcreteLanes *src, int imm, const uint32_t *scalar) {
  switch (expr->kind()) {
  case Term::Kind::Int:
    return expr->bits();
  case Term::Kind::Sym: {
    const std::string &n = expr->name();
    if (n.size() == 2 && n[1] >= '0' && n[1] <= '3') {
      int lane = n[1] - '0';
      if (n[0] == 'd')
        return dst[lane];
      if (n[0] == 's') {
        if (!src)
          throw std::logic_error("source selector without a source register");
        return (*src)[lane];
      }
    }
    if (n == "imm")
      return static_cast<uint32_t>(imm);
    if (n == "scalar") {
      if (!scalar)
        throw std::logic_error("scalar selector without a scalar operand");
      return *scalar;
    }
    throw std::out_of_range("unknown symbol in lane expression: " + n);
  }
  case Term::Kind::Wild:
    throw std::logic_error("wildcard in a lane expression");
  case Term::Kind::App:
    return eval_op(expr->op(),
                   eval_lane(expr->lhs(), dst, src, imm, scalar),
                   eval_lane(expr->rhs(), dst, src, imm, scalar));
  }
  return 0;
}

} // namespace

void concrete_step(ConcreteState &state, const Instruction &instr,
                   const Assignment &asg, const Isa &isa) {
  const InstructionTemplate *tmpl = isa.find(instr.mnemonic);
  if (!tmpl)
    throw std::invalid_argument("unknown mnemonic: " + instr.mnemonic);
  if (tmpl->wholecopy) {
    state[instr.dst] = state[instr.src_reg];
    return;
  }
  const ConcreteLanes dst = state[instr.dst];
  const ConcreteLanes *src = instr.src_kind == Instruction::SrcKind::Reg
                                 ? &state[instr.src_reg]
                                 : nullptr;
  uint32_t scalar_value = 0;
  const uint32_t *scalar = nullptr;
  if (instr.src_kind == Instruction::SrcKind::Scalar) {
    scalar_value = asg.lookup(instr.scalar);
    scalar = &scalar_value;
  }
  const Lanes *lanes = &tmpl->lanes;
  if (tmpl->form == Form::RI && !tmpl->imm_lanes.empty()) {
    auto it = tmpl->imm_lanes.find(instr.imm);
    if (it == tmpl->imm_lanes.end())
      throw std::invalid_argument("immediate " + std::to_string(instr.imm) +
                                  " is not declared for " + instr.mnemonic);
    lanes = &it->second;
  }
  ConcreteLanes result;
  for (int i = 0; i < kNumLanes; ++i)
    result[i] = eval_lane((*lanes)[i], dst, src, instr.imm, scalar);
  state[instr.dst] = result;
}

ConcreteState run_concrete(const MachineState &start,
                           const std::vector<Instruction> &seq,
                           const Assignment &asg, const Isa &isa) {
  ConcreteState state = concretize(start, asg);
  for (const Instruction &instr : seq)
    concrete_step(state, instr, asg, isa);
  return state;
}

namespace {

struct SampleCheck {
  bool ok = true;
  Counterexample cex;
};

SampleCheck check_sample(const MachineState &start, const GoalPattern &goal,
                         const std::vector<Instruction> &seq, const Isa &isa,
                         const Assignment &asg, int sample_index) {
  SampleCheck result;
  ConcreteState final_state = run_concrete(start, seq, asg, isa);
  for (int r = 0; r < kNumRegisters && result.ok; ++r) {
    const RegisterGoal &g = goal.regs[r];
    if (!g.has_value())
      continue;
    for (int i = 0; i < kNumLanes; ++i) {
      const TermPtr &pattern = (*g)[i];
      if (pattern->is_wild())
        continue;
      uint32_t expected = eval_term(pattern, asg.values);
      uint32_t actual = final_state[r][i];
      if (expected != actual) {
        result.ok = false;
        result.cex = Counterexample{asg, sample_index, r, i, expected, actual};
        break;
      }
    }
  }
  return result;
}

} // namespace

Verdict verify_sequence(const MachineState &start, const GoalPattern &goal,
                        const std::vector<std::string> &scalars,
                        const std::vector<Instruction> &seq, const Isa &isa,
                        int samples, uint32_t seed, int threads) {
  Verdict verdict;
  if (samples <= 0)
    return verdict;

  std::vector<std::string> symbols = collect_symbols(start, scalars);

  // Boundary assignments first, then seeded uniform draws in sorted
  // symbol order, so a fixed seed yields an identical sample set.
  std::vector<Assignment> assignments;
  assignments.reserve(samples);
  {
    Assignment zeros, ones;
    for (const std::string &s : symbols) {
      zeros.values[s] = 0;
      ones.values[s] = 0xFFFFFFFFu;
    }
    assignments.push_back(std::move(zeros));
    if (samples >= 2)
      assignments.push_back(std::move(ones));
  }
  std::mt19937 rng(seed);
  std::uniform_int_distribution<uint32_t> dist;
  while (static_cast<int>(assignments.size()) < samples) {
    Assignment asg;
    for (const std::string &s : symbols)
      asg.values[s] = dist(rng);
    assignments.push_back(std::move(asg));
  }

  const int n = static_cast<int>(assignments.size());
  std::vector<uint8_t> failed(n, 0);
  std::vector<Counterexample> cexs(n);

#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads > 0 ? threads : 1) if (threads != 1)
#endif
  for (int k = 0; k < n; ++k) {
    SampleCheck check = check_sample(start, goal, seq, isa, assignments[k], k);
    if (!check.ok) {
      failed[k] = 1;
      cexs[k] = std::move(check.cex);
    }
  }

  for (int k = 0; k < n; ++k) {
    if (failed[k]) {
      verdict.pass = false;
      verdict.counterexample = std::move(cexs[k]);
      break;
    }
  }
  return verdict;
}

} // namespace iforge

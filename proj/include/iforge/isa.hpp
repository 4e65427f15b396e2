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

#ifndef IFORGE_ISA_HPP
#define IFORGE_ISA_HPP

#include "iforge/machine.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace iforge {

enum class Form : uint8_t { RR, RI, RS };

/// One instruction rule from the ISA description. Lane expressions are
/// terms over the selectors d0..d3 (destination elements), s0..s3 (source
/// elements, RR only), `imm` (RI only) and `scalar` (RS only).
///
/// An RI entry either carries one generic lane set (which may use `imm`
/// arithmetically) or one lane set per declared immediate, selected at
/// instantiation time.
struct InstructionTemplate {
  std::string mnemonic;
  Form form = Form::RR;
  int cycles = 1;
  bool wholecopy = false;
  std::vector<int> imms;                 // RI: declared immediate set
  Lanes lanes{};                         // generic lane expressions
  bool has_generic_lanes = false;
  std::map<int, Lanes> imm_lanes;        // RI: per-immediate lane sets

  bool reads_dest = false;               // some lane references d0..d3
  bool reads_src = false;                // some lane references s0..s3

  // Aliased (dst = src) analysis, RR only.
  bool aliased_noop = false;             // aliased result is the identity
  bool aliased_const = false;            // lane_independent: folds to literals
  Lanes aliased_lanes{};                 // folded lanes when aliased_const
};

/// True iff binding every selector of the aliased (dst = src) case to one
/// fresh symbol per element folds all four lanes to integer literals.
/// Such instructions (xor-with-self, compare-equal-with-self,
/// subtract-with-self) are applicable even to opaque registers.
bool lane_independent(const InstructionTemplate &tmpl);

struct Isa {
  std::vector<InstructionTemplate> templates;

  const InstructionTemplate *find(std::string_view mnemonic) const;
};

/// Parses the line-oriented ISA description ('#' comments):
///
///   inst <mnemonic> form=<rr|ri|rs> cycles=<int> [wholecopy] [imms=4,8,12]
///     e3=<expr> e2=<expr> e1=<expr> e0=<expr>
///     imm=<n> e3=<expr> e2=<expr> e1=<expr> e0=<expr>   (RI alternative)
///
/// Lane expressions are whitespace-free. Validates selector usage against
/// the form, immediate sets, wholecopy shape, and duplicate mnemonics.
/// Throws ParseError with a 1-based line number.
Isa parse_isa(std::string_view text);

/// A fully instantiated instruction: concrete destination register and a
/// concrete source register, byte immediate, or scalar symbol.
struct Instruction {
  enum class SrcKind : uint8_t { Reg, Imm, Scalar };

  std::string mnemonic;
  int dst = 0;
  SrcKind src_kind = SrcKind::Reg;
  int src_reg = 0;
  int imm = 0;
  std::string scalar;
};

bool instruction_equal(const Instruction &a, const Instruction &b);

/// Intel syntax, destination first: "pxor xmm0, xmm0", "psrldq xmm2, 4",
/// "movd xmm4, I".
std::string print_instruction(const Instruction &instr);

/// Inverse of print_instruction. Operand shape decides the source kind:
/// xmmN is a register, an integer is an immediate, any other identifier is
/// a scalar. Throws ParseError.
Instruction parse_instruction(std::string_view text);

/// An applicable state transition: the instruction plus everything needed
/// to execute it symbolically. Lane expressions are specialized at
/// instantiation (immediates and scalars substituted), so they reference
/// only d/s selectors.
struct Transition {
  Instruction instr;
  bool wholecopy = false;
  bool reads_dest = false;
  bool reads_src = false;
  bool const_result = false; // lane-independent aliased: lanes are literals
  Lanes lanes{};
  int cycles = 1;
};

/// Per-mnemonic cycle weights; unlisted mnemonics cost 1.
struct CostModel {
  std::map<std::string, int> cycles;

  int lookup(const std::string &mnemonic) const;
};

/// Parses "cycles <mnemonic> <positive-int>" lines ('#' comments).
/// Throws ParseError on a non-positive cycle count.
CostModel parse_cost_model(std::string_view text);

/// Expands templates into concrete transitions over the allowed registers,
/// immediates and scalar pool, in deterministic order: template declaration
/// order, then destination index, then source index / declared immediate
/// order / scalar pool order. Aliased (dst = src) RR transitions are
/// emitted unless the aliased result is a pure no-op (whole-register copy
/// onto itself). When `allow` is set, only those mnemonics participate.
/// When `costs` is set it overrides the per-template cycle counts.
std::vector<Transition>
instantiate(const Isa &isa, const std::vector<int> &allowed_regs,
            const std::vector<std::string> &scalar_pool,
            const std::optional<std::set<std::string>> &allow = std::nullopt,
            const CostModel *costs = nullptr);

/// Executes one transition symbolically. Returns nullopt (not applicable)
/// when a lane-read operand is opaque; whole-register copies and
/// lane-independent aliased instructions are exempt. Per-lane results are
/// partially evaluated through fold_binop. At most the destination
/// register changes.
std::optional<MachineState> apply_transition(const Transition &t,
                                             const MachineState &s);

/// Replays a bare instruction by rebuilding its transition from the ISA.
/// Throws std::invalid_argument on an unknown mnemonic or a form mismatch.
std::optional<MachineState> apply_instruction(const Instruction &instr,
                                              const MachineState &s,
                                              const Isa &isa);

} // namespace iforge

#endif // IFORGE_ISA_HPP

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

#ifndef IFORGE_MACHINE_HPP
#define IFORGE_MACHINE_HPP

#include "iforge/term.hpp"

#include <array>
#include <optional>
#include <string>

namespace iforge {

inline constexpr int kNumRegisters = 8;
inline constexpr int kNumLanes = 4;

/// Lane arrays are indexed by element number: lanes[0] is element 0 (the
/// lowest dword). Display order is high to low, element 3 first, matching
/// the usual packed-list convention.
using Lanes = std::array<TermPtr, kNumLanes>;

/// One vector register: either an opaque value (known to exist, not
/// inspectable — a named atom that never matches a packed goal) or a
/// packed quadruple of ground terms.
struct RegisterContent {
  static RegisterContent opaque(std::string tag);
  static RegisterContent packed(Lanes lanes);

  bool is_opaque = false;
  std::string tag;
  Lanes lanes{};
};

bool content_equal(const RegisterContent &a, const RegisterContent &b);

/// The whole SIMD state: eight registers, every slot defined.
struct MachineState {
  std::array<RegisterContent, kNumRegisters> regs;
};

bool states_equal(const MachineState &a, const MachineState &b);

/// All eight registers opaque with the given tags. Tags must be pairwise
/// distinct (unrelated initial values); throws std::invalid_argument on a
/// duplicate.
MachineState opaque_start(const std::array<std::string, kNumRegisters> &tags);

/// Deterministic canonical encoding. Two states have equal keys iff they
/// are structurally identical register-by-register, lane-by-lane.
std::string state_key(const MachineState &s);

/// "[ [0,0,0,0], xmm1, xmm2, ... ]" with lanes printed element 3 first.
std::string print_state(const MachineState &s);

/// Per-register goal: disengaged means any content is acceptable; engaged
/// holds four lane patterns in which wildcards are allowed.
using RegisterGoal = std::optional<Lanes>;

struct GoalPattern {
  /// The validated constructor: at least one register must be
  /// constrained, otherwise std::invalid_argument. A default-constructed
  /// pattern is an empty placeholder to be filled through make().
  static GoalPattern make(std::array<RegisterGoal, kNumRegisters> regs);

  std::array<RegisterGoal, kNumRegisters> regs;
};

/// True iff every constrained register is packed in `s` and each lane
/// matches the corresponding pattern lane via match_term. Opaque content
/// never matches a packed pattern. When `normalize` is set, both pattern
/// and subject lanes are run through normalize_ac before matching.
bool match_goal(const MachineState &s, const GoalPattern &goal, bool normalize);

/// Goal display: unconstrained registers print as "_".
std::string print_goal(const GoalPattern &goal);

std::string register_name(int index);
/// Parses "xmm0".."xmm7"; returns nullopt on anything else.
std::optional<int> parse_register(std::string_view text);

} // namespace iforge

#endif // IFORGE_MACHINE_HPP

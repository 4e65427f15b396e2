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

#ifndef IFORGE_VERIFY_HPP
#define IFORGE_VERIFY_HPP

#include "iforge/isa.hpp"
#include "iforge/search.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace iforge {

/// Total map from symbol names to concrete 32-bit values. An opaque
/// register tag expands to four independent per-lane entries keyed
/// "<tag>#<lane>".
struct Assignment {
  std::map<std::string, uint32_t> values;

  uint32_t lookup(const std::string &name) const;
};

/// Key for lane `lane` of an opaque register tagged `tag`.
std::string opaque_lane_key(const std::string &tag, int lane);

/// Every symbol the query can mention: lane symbols of packed start
/// registers, per-lane expansions of opaque tags, and the scalar pool.
/// Sorted and duplicate-free.
std::vector<std::string> collect_symbols(const MachineState &start,
                                         const std::vector<std::string> &scalars);

using ConcreteLanes = std::array<uint32_t, kNumLanes>;
using ConcreteState = std::array<ConcreteLanes, kNumRegisters>;

/// Substitutes concrete values for every symbol in the start state.
ConcreteState concretize(const MachineState &start, const Assignment &asg);

/// Executes the sequence numerically with 32-bit wrapping, independent of
/// the symbolic path: lane expressions are evaluated directly on concrete
/// lanes. Throws std::invalid_argument on an unknown mnemonic and
/// std::out_of_range on an unknown symbol.
ConcreteState run_concrete(const MachineState &start,
                           const std::vector<Instruction> &seq,
                           const Assignment &asg, const Isa &isa);

/// One concrete execution step; exposed for the commutation tests.
void concrete_step(ConcreteState &state, const Instruction &instr,
                   const Assignment &asg, const Isa &isa);

struct Counterexample {
  Assignment assignment;
  int sample_index = 0;
  int reg = 0;
  int lane = 0;
  uint32_t expected = 0;
  uint32_t actual = 0;
};

struct Verdict {
  bool pass = true;
  std::optional<Counterexample> counterexample;
};

/// Draws `samples` seeded assignments — the all-zeros and all-ones
/// boundary assignments first, then uniform random values — runs the
/// sequence concretely under each, evaluates every constrained goal lane
/// under the same assignment and compares. Wildcard lanes and
/// unconstrained registers are ignored. On failure reports the lowest
/// failing sample. `threads` > 1 evaluates samples in parallel; the
/// verdict is identical either way.
Verdict verify_sequence(const MachineState &start, const GoalPattern &goal,
                        const std::vector<std::string> &scalars,
                        const std::vector<Instruction> &seq, const Isa &isa,
                        int samples, uint32_t seed, int threads = 1);

} // namespace iforge

#endif // IFORGE_VERIFY_HPP

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

#ifndef IFORGE_SEARCH_HPP
#define IFORGE_SEARCH_HPP

#include "iforge/isa.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

namespace iforge {

/// Search limits. ids/bfs require a finite max_depth; cost additionally
/// accepts max_cost as its bound. max_states caps the memo table of the
/// memoizing engines.
struct SearchBudget {
  int max_depth = -1; // negative: unbounded
  std::optional<int64_t> max_cost;
  int max_solutions = 1;
  size_t max_states = 1000000;

  bool depth_bounded() const { return max_depth >= 0; }
};

struct Sequence {
  std::vector<Instruction> instrs;
  int length = 0;
  int64_t total_cycles = 0;
};

bool sequence_equal(const Sequence &a, const Sequence &b);

enum class SearchStatus : uint8_t {
  Ok,              // at least one solution emitted
  BudgetExhausted, // search space exhausted within budget, no solution
  MemoLimit,       // visited-set capacity exceeded
};

struct SearchStats {
  uint64_t states_expanded = 0;
  uint64_t transitions_applied = 0;
};

struct SearchResult {
  std::vector<Sequence> solutions;
  SearchStatus status = SearchStatus::Ok;
  SearchStats stats;
  bool truncated = false; // stopped because max_solutions was reached
};

/// Iterative deepening: depth-limited DFS restarted from depth 0 upward,
/// so solutions stream grouped by increasing length; within one length the
/// order is the one induced by transition instantiation order. Transitions
/// that leave the state unchanged are skipped. The paper-faithful default
/// engine.
SearchResult ids_search(const MachineState &start, const GoalPattern &goal,
                        const std::vector<Transition> &transitions,
                        const SearchBudget &budget, bool normalize = false);

/// OpenMP kernel: each IDS depth iteration fans the first transition
/// choice out across threads, each subtree explored by the serial DFS;
/// results are merged back into the serial emission order, so output is
/// identical to ids_search. Worth it when enumerating large depths; a
/// capped search cannot stop early across branches.
SearchResult ids_search_parallel(const MachineState &start,
                                 const GoalPattern &goal,
                                 const std::vector<Transition> &transitions,
                                 const SearchBudget &budget,
                                 bool normalize = false, int threads = 0);

/// Level-order search with a visited set keyed by state_key, first arrival
/// wins: one shortest sequence per distinct reachable goal state, minimal
/// length guaranteed for the first emission.
SearchResult bfs_search(const MachineState &start, const GoalPattern &goal,
                        const std::vector<Transition> &transitions,
                        const SearchBudget &budget, bool normalize = false);

/// Uniform-cost search: lowest total cycle count first, memoized on best
/// known cost per state; ties broken by length, then by the deterministic
/// instantiation order. Every transition must have positive cycles.
SearchResult cost_search(const MachineState &start, const GoalPattern &goal,
                         const std::vector<Transition> &transitions,
                         const SearchBudget &budget, bool normalize = false);

/// Keeps one representative (first by emission order) per equivalence
/// class of solutions under consistent renaming of scratch registers —
/// registers neither packed in the start state nor constrained in the
/// goal. Idempotent.
std::vector<Sequence> dedup_renames(const std::vector<Sequence> &solutions,
                                    const std::set<int> &scratch_regs);

} // namespace iforge

#endif // IFORGE_SEARCH_HPP

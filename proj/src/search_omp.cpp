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

#include "iforge/search.hpp"
#include "search_detail.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace iforge {

// Fans the first transition choice of every depth iteration out across
// threads; each subtree runs the serial depth-limited DFS. Per-branch
// solution lists are concatenated in branch order, which restores the
// exact serial emission order. Each branch collects up to max_solutions
// on its own, so unlike the serial engine a capped search cannot stop
// early; the kernel pays off when enumerating a depth exhaustively.
SearchResult ids_search_parallel(const MachineState &start,
                                 const GoalPattern &goal,
                                 const std::vector<Transition> &transitions,
                                 const SearchBudget &budget, bool normalize,
                                 int threads) {
  detail::validate_transitions(transitions);
  if (!budget.depth_bounded())
    throw std::invalid_argument("ids_search requires a finite max_depth");
  if (budget.max_solutions <= 0)
    throw std::invalid_argument("max_solutions must be positive");

  SearchResult res;
  auto have_enough = [&] {
    return static_cast<int>(res.solutions.size()) >= budget.max_solutions;
  };

  // Depth 0: the already-satisfied start state.
  if (match_goal(start, goal, normalize))
    res.solutions.push_back(Sequence{});

  struct Branch {
    int via;
    MachineState state;
    int64_t cost;
  };

  for (int depth = 1; depth <= budget.max_depth && !have_enough(); ++depth) {
    std::vector<Branch> branches;
    ++res.stats.states_expanded;
    for (int i = 0; i < static_cast<int>(transitions.size()); ++i) {
      const Transition &t = transitions[i];
      if (budget.max_cost && t.cycles > *budget.max_cost)
        continue;
      std::optional<MachineState> next = apply_transition(t, start);
      if (!next)
        continue;
      ++res.stats.transitions_applied;
      if (content_equal(next->regs[t.instr.dst], start.regs[t.instr.dst]))
        continue;
      branches.push_back({i, std::move(*next), t.cycles});
    }

    const int nb = static_cast<int>(branches.size());
    std::vector<std::vector<Sequence>> branch_solutions(nb);
    std::vector<SearchStats> branch_stats(nb);

#ifdef _OPENMP
    int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
#else
    (void)threads;
#endif
    for (int b = 0; b < nb; ++b) {
      detail::IdsFrame frame{transitions,
                             goal,
                             normalize,
                             budget.max_cost,
                             budget.max_solutions,
                             branch_solutions[b],
                             branch_stats[b]};
      frame.path.push_back(branches[b].via);
      detail::ids_dfs(frame, branches[b].state, depth - 1, branches[b].cost);
    }

    for (int b = 0; b < nb && !have_enough(); ++b) {
      res.stats.states_expanded += branch_stats[b].states_expanded;
      res.stats.transitions_applied += branch_stats[b].transitions_applied;
      for (Sequence &seq : branch_solutions[b]) {
        res.solutions.push_back(std::move(seq));
        if (have_enough())
          break;
      }
    }
  }

  res.truncated = have_enough();
  res.status = res.solutions.empty() ? SearchStatus::BudgetExhausted
                                     : SearchStatus::Ok;
  return res;
}

} // namespace iforge

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

// Internals shared between the serial engines and the OpenMP kernel.

#ifndef IFORGE_SEARCH_DETAIL_HPP
#define IFORGE_SEARCH_DETAIL_HPP

#include "iforge/search.hpp"

namespace iforge::detail {

Sequence path_to_sequence(const std::vector<int> &path,
                          const std::vector<Transition> &transitions);

/// Depth-limited DFS emitting goal hits of exactly `remaining` further
/// steps. `path` carries the transition indices taken so far and is
/// restored on return. Stops once `max_solutions` sequences are collected.
struct IdsFrame {
  const std::vector<Transition> &transitions;
  const GoalPattern &goal;
  bool normalize;
  std::optional<int64_t> max_cost;
  int max_solutions;
  std::vector<Sequence> &out;
  SearchStats &stats;
  std::vector<int> path = {};
  bool done = false;
};

void ids_dfs(IdsFrame &frame, const MachineState &state, int remaining,
             int64_t cost);

void validate_transitions(const std::vector<Transition> &transitions);

} // namespace iforge::detail

#endif // IFORGE_SEARCH_DETAIL_HPP

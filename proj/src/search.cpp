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

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace iforge {

bool sequence_equal(const Sequence &a, const Sequence &b) {
  if (a.length != b.length || a.total_cycles != b.total_cycles ||
      a.instrs.size() != b.instrs.size())
    return false;
  for (size_t i = 0; i < a.instrs.size(); ++i)
    if (!instruction_equal(a.instrs[i], b.instrs[i]))
      return false;
  return true;
}

namespace detail {

Sequence path_to_sequence(const std::vector<int> &path,
                          const std::vector<Transition> &transitions) {
  Sequence seq;
  seq.length = static_cast<int>(path.size());
  seq.instrs.reserve(path.size());
  for (int idx : path) {
    seq.instrs.push_back(transitions[idx].instr);
    seq.total_cycles += transitions[idx].cycles;
  }
  return seq;
}

void validate_transitions(const std::vector<Transition> &transitions) {
  if (transitions.empty())
    throw std::invalid_argument("no transitions to search over");
  for (const auto &t : transitions)
    if (t.cycles <= 0)
      throw std::invalid_argument("non-positive cycle cost for " +
                                  t.instr.mnemonic);
}

void ids_dfs(IdsFrame &frame, const MachineState &state, int remaining,
             int64_t cost) {
  if (frame.done)
    return;
  if (remaining == 0) {
    if (match_goal(state, frame.goal, frame.normalize)) {
      frame.out.push_back(path_to_sequence(frame.path, frame.transitions));
      if (static_cast<int>(frame.out.size()) >= frame.max_solutions)
        frame.done = true;
    }
    return;
  }
  ++frame.stats.states_expanded;
  const int n = static_cast<int>(frame.transitions.size());
  for (int i = 0; i < n && !frame.done; ++i) {
    const Transition &t = frame.transitions[i];
    int64_t next_cost = cost + t.cycles;
    if (frame.max_cost && next_cost > *frame.max_cost)
      continue;
    std::optional<MachineState> next = apply_transition(t, state);
    if (!next)
      continue;
    ++frame.stats.transitions_applied;
    if (content_equal(next->regs[t.instr.dst], state.regs[t.instr.dst]))
      continue; // no-op: same state, a shorter sequence exists without it
    frame.path.push_back(i);
    ids_dfs(frame, *next, remaining - 1, next_cost);
    frame.path.pop_back();
  }
}

} // namespace detail

SearchResult ids_search(const MachineState &start, const GoalPattern &goal,
                        const std::vector<Transition> &transitions,
                        const SearchBudget &budget, bool normalize) {
  detail::validate_transitions(transitions);
  if (!budget.depth_bounded())
    throw std::invalid_argument("ids_search requires a finite max_depth");
  if (budget.max_solutions <= 0)
    throw std::invalid_argument("max_solutions must be positive");

  SearchResult res;
  detail::IdsFrame frame{transitions,          goal,
                         normalize,            budget.max_cost,
                         budget.max_solutions, res.solutions,
                         res.stats};
  for (int depth = 0; depth <= budget.max_depth && !frame.done; ++depth)
    detail::ids_dfs(frame, start, depth, 0);
  res.truncated = frame.done;
  res.status = res.solutions.empty() ? SearchStatus::BudgetExhausted
                                     : SearchStatus::Ok;
  return res;
}

SearchResult bfs_search(const MachineState &start, const GoalPattern &goal,
                        const std::vector<Transition> &transitions,
                        const SearchBudget &budget, bool normalize) {
  detail::validate_transitions(transitions);
  if (!budget.depth_bounded())
    throw std::invalid_argument("bfs_search requires a finite max_depth");
  if (budget.max_solutions <= 0)
    throw std::invalid_argument("max_solutions must be positive");

  struct Node {
    MachineState state;
    int parent;
    int via;
    int depth;
    int64_t cost;
  };

  SearchResult res;
  std::vector<Node> nodes;
  std::unordered_set<std::string> visited;

  auto emit = [&](int node_idx) {
    std::vector<int> path;
    for (int i = node_idx; nodes[i].parent >= 0; i = nodes[i].parent)
      path.push_back(nodes[i].via);
    std::reverse(path.begin(), path.end());
    res.solutions.push_back(detail::path_to_sequence(path, transitions));
    return static_cast<int>(res.solutions.size()) >= budget.max_solutions;
  };

  if (budget.max_states < 1) {
    res.status = SearchStatus::MemoLimit;
    return res;
  }
  visited.insert(state_key(start));
  nodes.push_back({start, -1, -1, 0, 0});
  bool done = false;
  if (match_goal(start, goal, normalize))
    done = emit(0);

  for (size_t qi = 0; qi < nodes.size() && !done; ++qi) {
    if (nodes[qi].depth >= budget.max_depth)
      continue;
    ++res.stats.states_expanded;
    const int n = static_cast<int>(transitions.size());
    for (int i = 0; i < n && !done; ++i) {
      const Transition &t = transitions[i];
      // nodes may reallocate inside the loop; re-take the reference.
      const Node &cur = nodes[qi];
      int64_t next_cost = cur.cost + t.cycles;
      if (budget.max_cost && next_cost > *budget.max_cost)
        continue;
      std::optional<MachineState> next = apply_transition(t, cur.state);
      if (!next)
        continue;
      ++res.stats.transitions_applied;
      std::string key = state_key(*next);
      if (visited.count(key))
        continue; // first arrival wins
      if (visited.size() + 1 > budget.max_states) {
        res.status = SearchStatus::MemoLimit;
        return res;
      }
      visited.insert(std::move(key));
      nodes.push_back({std::move(*next), static_cast<int>(qi), i,
                       nodes[qi].depth + 1, next_cost});
      if (match_goal(nodes.back().state, goal, normalize))
        done = emit(static_cast<int>(nodes.size()) - 1);
    }
  }
  res.truncated = done;
  res.status = res.solutions.empty() ? SearchStatus::BudgetExhausted
                                     : SearchStatus::Ok;
  return res;
}

SearchResult cost_search(const MachineState &start, const GoalPattern &goal,
                         const std::vector<Transition> &transitions,
                         const SearchBudget &budget, bool normalize) {
  detail::validate_transitions(transitions);
  if (!budget.depth_bounded() && !budget.max_cost)
    throw std::invalid_argument(
        "cost_search requires max_depth or max_cost to be finite");
  if (budget.max_solutions <= 0)
    throw std::invalid_argument("max_solutions must be positive");

  struct Node {
    MachineState state;
    std::string key;
    int parent;
    int via;
    int depth;
    int64_t cost;
  };
  // Min-heap order: cost, then length, then push order (which follows the
  // instantiation order of the path).
  struct HeapEntry {
    int64_t cost;
    int depth;
    uint64_t seq;
    int node;
    bool operator>(const HeapEntry &o) const {
      if (cost != o.cost)
        return cost > o.cost;
      if (depth != o.depth)
        return depth > o.depth;
      return seq > o.seq;
    }
  };

  SearchResult res;
  std::vector<Node> nodes;
  std::unordered_map<std::string, int64_t> best_cost;
  std::unordered_set<std::string> closed;
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>> heap;
  uint64_t push_seq = 0;

  auto emit = [&](int node_idx) {
    std::vector<int> path;
    for (int i = node_idx; nodes[i].parent >= 0; i = nodes[i].parent)
      path.push_back(nodes[i].via);
    std::reverse(path.begin(), path.end());
    res.solutions.push_back(detail::path_to_sequence(path, transitions));
    return static_cast<int>(res.solutions.size()) >= budget.max_solutions;
  };

  if (budget.max_states < 1) {
    res.status = SearchStatus::MemoLimit;
    return res;
  }
  nodes.push_back({start, state_key(start), -1, -1, 0, 0});
  best_cost[nodes[0].key] = 0;
  heap.push({0, 0, push_seq++, 0});

  bool done = false;
  while (!heap.empty() && !done) {
    HeapEntry top = heap.top();
    heap.pop();
    Node cur = nodes[top.node];
    if (closed.count(cur.key))
      continue; // stale entry, a cheaper or earlier path was finalized
    closed.insert(cur.key);
    ++res.stats.states_expanded;
    if (match_goal(cur.state, goal, normalize)) {
      done = emit(top.node);
      if (done)
        break;
    }
    if (budget.depth_bounded() && cur.depth >= budget.max_depth)
      continue;
    const int n = static_cast<int>(transitions.size());
    for (int i = 0; i < n; ++i) {
      const Transition &t = transitions[i];
      int64_t next_cost = cur.cost + t.cycles;
      if (budget.max_cost && next_cost > *budget.max_cost)
        continue;
      std::optional<MachineState> next = apply_transition(t, cur.state);
      if (!next)
        continue;
      ++res.stats.transitions_applied;
      std::string key = state_key(*next);
      if (closed.count(key))
        continue;
      auto it = best_cost.find(key);
      if (it != best_cost.end() && it->second <= next_cost)
        continue;
      if (it == best_cost.end()) {
        if (best_cost.size() + 1 > budget.max_states) {
          res.status = SearchStatus::MemoLimit;
          return res;
        }
        best_cost.emplace(key, next_cost);
      } else {
        it->second = next_cost;
      }
      nodes.push_back({std::move(*next), std::move(key),
                       static_cast<int>(top.node), i, cur.depth + 1,
                       next_cost});
      heap.push({next_cost, cur.depth + 1, push_seq++,
                 static_cast<int>(nodes.size()) - 1});
    }
  }
  res.truncated = done;
  res.status = res.solutions.empty() ? SearchStatus::BudgetExhausted
                                     : SearchStatus::Ok;
  return res;
}

std::vector<Sequence> dedup_renames(const std::vector<Sequence> &solutions,
                                    const std::set<int> &scratch_regs) {
  std::vector<int> targets(scratch_regs.begin(), scratch_regs.end());
  std::vector<Sequence> out;
  std::unordered_set<std::string> seen;
  for (const Sequence &sol : solutions) {
    // Relabel scratch registers by first appearance onto the sorted
    // scratch list; non-scratch registers are fixed points.
    std::map<int, int> rename;
    size_t next_target = 0;
    auto canon = [&](int reg) {
      if (!scratch_regs.count(reg))
        return reg;
      auto it = rename.find(reg);
      if (it != rename.end())
        return it->second;
      int t = targets[next_target++];
      rename.emplace(reg, t);
      return t;
    };
    std::string key;
    for (const Instruction &ins : sol.instrs) {
      Instruction c = ins;
      c.dst = canon(c.dst);
      if (c.src_kind == Instruction::SrcKind::Reg)
        c.src_reg = canon(c.src_reg);
      key += print_instruction(c);
      key += '\n';
    }
    if (seen.insert(key).second)
      out.push_back(sol);
  }
  return out;
}

} // namespace iforge

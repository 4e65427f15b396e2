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

// End-to-end acceptance suite: reproduces every published search result
// with the shipped ISA and query files, one pass/fail line per criterion.

#include "iforge/report.hpp"
#include "iforge/verify.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

using namespace iforge;

namespace {

std::string data_path(const std::string &name) {
  return std::string(IFORGE_DATA_DIR) + "/" + name;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Query load_query(const std::string &name) {
  return parse_query(read_file(data_path("queries/" + name)));
}

std::vector<std::string> asm_lines(const Sequence &seq) {
  std::vector<std::string> out;
  for (const Instruction &ins : seq.instrs)
    out.push_back(print_instruction(ins));
  return out;
}

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string &what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// Solutions produced by criteria 1-6, replayed by the oracle criterion.
struct VerifiedRun {
  Query query;
  std::vector<Sequence> solutions;
};

std::vector<VerifiedRun> g_runs;
Isa g_isa;

Report timed_run(const Query &q, double &elapsed) {
  auto t0 = std::chrono::steady_clock::now();
  Report report = run_query(q, g_isa);
  elapsed = seconds_since(t0);
  VerifiedRun run;
  run.query = q;
  for (const SolutionRecord &rec : report.solutions)
    run.solutions.push_back(rec.seq);
  g_runs.push_back(std::move(run));
  return report;
}

// --------------------------------------------------------------------------

Check criterion1_zeroing() {
  Check c;
  double elapsed = 0;
  Report r = timed_run(load_query("zero.q"), elapsed);
  c.expect(!r.solutions.empty(), "no solution found");
  if (!r.solutions.empty()) {
    c.expect(asm_lines(r.solutions[0].seq) ==
                 std::vector<std::string>{"pxor xmm0, xmm0"},
             "first solution is not pxor xmm0, xmm0");
    c.expect(r.solutions[0].seq.length == 1, "first solution length != 1");
    c.expect(r.solutions[0].verdict == "pass", "verification failed");
  }
  c.expect(elapsed < 1.0, "runtime exceeded 1 s");
  c.detail += " (" + std::to_string(elapsed) + " s)";
  return c;
}

Check criterion2_allones() {
  Check c;
  Query q = load_query("allones.q");
  q.budget.max_solutions = 2000; // enumerate all length <= 2 solutions
  double elapsed = 0;
  Report r = timed_run(q, elapsed);
  c.expect(!r.solutions.empty(), "no solution found");
  if (!r.solutions.empty()) {
    c.expect(asm_lines(r.solutions[0].seq) ==
                 std::vector<std::string>{"pcmpeqd xmm0, xmm0"},
             "first solution is not pcmpeqd xmm0, xmm0");
    bool clobbering_variant = false;
    bool paper_pair = false;
    for (const SolutionRecord &rec : r.solutions) {
      if (rec.seq.length != 2)
        continue;
      std::vector<std::string> lines = asm_lines(rec.seq);
      if (lines[1] == "pcmpeqd xmm0, xmm0")
        clobbering_variant = true;
      if (lines ==
          std::vector<std::string>{"pxor xmm0, xmm0", "pcmpeqd xmm0, xmm0"})
        paper_pair = true;
    }
    c.expect(clobbering_variant,
             "no length-2 solution ends with pcmpeqd xmm0, xmm0");
    c.expect(paper_pair, "pxor-then-pcmpeqd alternative missing");
    for (const SolutionRecord &rec : r.solutions)
      c.expect(rec.verdict == "pass", "a solution failed verification");
  }
  c.expect(elapsed < 5.0, "runtime exceeded 5 s");
  c.detail += " (" + std::to_string(elapsed) + " s)";
  return c;
}

Check criterion3_broadcast() {
  Check c;
  Query q = load_query("broadcast.q");
  double elapsed = 0;
  Report r = timed_run(q, elapsed);
  c.expect(!r.solutions.empty(), "no solution found");
  if (!r.solutions.empty()) {
    c.expect(asm_lines(r.solutions[0].seq) ==
                 std::vector<std::string>{"movd xmm0, c",
                                          "punpckldq xmm0, xmm0",
                                          "punpckldq xmm0, xmm0"},
             "first solution is not movd + two unpacks");
    c.expect(r.solutions[0].verdict == "pass", "verification failed");
  }
  // Brute force: nothing of length <= 2 reaches the goal.
  std::vector<Transition> ts = instantiate(g_isa, q.registers, q.scalars);
  std::function<bool(const MachineState &, int)> any_solution =
      [&](const MachineState &s, int remaining) -> bool {
    if (match_goal(s, q.goal, false))
      return true;
    if (remaining == 0)
      return false;
    for (const Transition &t : ts) {
      auto next = apply_transition(t, s);
      if (next && any_solution(*next, remaining - 1))
        return true;
    }
    return false;
  };
  c.expect(!any_solution(q.start, 2), "a length <= 2 broadcast exists");
  c.expect(elapsed < 10.0, "runtime exceeded 10 s");
  c.detail += " (" + std::to_string(elapsed) + " s)";
  return c;
}

Check criterion4_copy() {
  Check c;
  double elapsed = 0;
  Report r = timed_run(load_query("copy.q"), elapsed);
  c.expect(!r.solutions.empty(), "no solution found");
  if (!r.solutions.empty()) {
    c.expect(asm_lines(r.solutions[0].seq) ==
                 std::vector<std::string>{"movdqa xmm0, xmm1"},
             "first solution is not movdqa xmm0, xmm1");
    c.expect(r.solutions[0].seq.length == 1, "first solution length != 1");
  }
  c.expect(elapsed < 1.0, "runtime exceeded 1 s");
  c.detail += " (" + std::to_string(elapsed) + " s)";
  return c;
}

const std::vector<std::string> kHsumFirst = {
    "movdqa xmm1, xmm0", "psrldq xmm0, 8",      "paddd xmm1, xmm0",
    "punpckldq xmm0, xmm1", "paddd xmm0, xmm1", "psrldq xmm0, 4"};
const std::vector<std::string> kHsumSecond = {
    "movdqa xmm1, xmm0", "psrldq xmm0, 8",  "paddd xmm1, xmm0",
    "movdqa xmm0, xmm1", "psrldq xmm1, 4",  "paddd xmm0, xmm1"};

Check criterion5_horizontal_sum() {
  Check c;
  Query q = load_query("hsum.q");
  q.budget.max_solutions = 1000000; // every distinct goal state to depth 6
  q.budget.max_states = 40000000;
  double bfs_elapsed = 0;
  Report r = timed_run(q, bfs_elapsed);
  c.expect(r.status != SearchStatus::MemoLimit, "bfs hit the memo limit");
  c.expect(!r.solutions.empty(), "no solution found");
  int min_len = -1;
  bool first_found = false, second_found = false;
  for (const SolutionRecord &rec : r.solutions) {
    if (min_len < 0 || rec.seq.length < min_len)
      min_len = rec.seq.length;
    std::vector<std::string> lines = asm_lines(rec.seq);
    first_found = first_found || lines == kHsumFirst;
    second_found = second_found || lines == kHsumSecond;
  }
  c.expect(min_len == 6, "minimal length is not 6 (got " +
                             std::to_string(min_len) + ")");
  c.expect(first_found, "first printed sequence missing at length 6");
  c.expect(second_found, "second printed sequence missing at length 6");
  c.expect(bfs_elapsed < 30.0, "bfs runtime exceeded 30 s");

  // The iterative-deepening engine agrees on the minimal length.
  Query ids_q = q;
  ids_q.engine = Engine::Ids;
  ids_q.budget.max_solutions = 1;
  auto t0 = std::chrono::steady_clock::now();
  Report ids_r = run_query(ids_q, g_isa, RunOptions{nullptr, 4});
  double ids_elapsed = seconds_since(t0);
  c.expect(!ids_r.solutions.empty(), "ids found no solution");
  if (!ids_r.solutions.empty())
    c.expect(ids_r.solutions[0].seq.length == 6,
             "ids first solution length != 6");
  c.expect(ids_elapsed < 600.0, "ids runtime exceeded 10 min");

  std::ostringstream detail;
  detail << " (bfs " << bfs_elapsed << " s, " << r.solutions.size()
         << " solutions; ids " << ids_elapsed << " s)";
  c.detail += detail.str();
  return c;
}

Check criterion6_empty_sequence() {
  Check c;
  Query q = parse_query("name noop\n"
                        "registers xmm0,xmm1\n"
                        "start xmm0 = [0,0,0,0]\n"
                        "goal xmm0 = [0,0,0,0]\n"
                        "engine ids\n"
                        "max_depth 2\n");
  double elapsed = 0;
  Report r = timed_run(q, elapsed);
  c.expect(!r.solutions.empty(), "no solution found");
  if (!r.solutions.empty()) {
    c.expect(r.solutions[0].seq.length == 0,
             "first solution is not the empty sequence");
    c.expect(r.solutions[0].verdict == "pass", "verification failed");
  }
  Query bfs_q = q;
  bfs_q.engine = Engine::Bfs;
  Report rb = run_query(bfs_q, g_isa);
  c.expect(!rb.solutions.empty() && rb.solutions[0].seq.length == 0,
           "bfs does not emit the empty sequence");
  return c;
}

Check criterion7_oracle_soundness() {
  Check c;
  size_t total = 0;
  for (const VerifiedRun &run : g_runs) {
    for (const Sequence &seq : run.solutions) {
      ++total;
      Verdict v = verify_sequence(run.query.start, run.query.goal,
                                  run.query.scalars, seq.instrs, g_isa, 100,
                                  run.query.seed);
      c.expect(v.pass, "emitted solution failed concrete verification: " +
                           (seq.instrs.empty()
                                ? std::string("<empty>")
                                : print_instruction(seq.instrs[0]) + " ..."));
    }
  }
  c.expect(total > 0, "no solutions collected from criteria 1-6");

  // Removing the final shift from the first horizontal-sum sequence must
  // produce a counterexample.
  Query q = load_query("hsum.q");
  std::vector<Instruction> mutated;
  for (size_t i = 0; i + 1 < kHsumFirst.size(); ++i)
    mutated.push_back(parse_instruction(kHsumFirst[i]));
  Verdict v = verify_sequence(q.start, q.goal, q.scalars, mutated, g_isa,
                              100, q.seed);
  c.expect(!v.pass, "mutated horizontal sum still verifies");
  if (!v.pass) {
    c.expect(v.counterexample.has_value(), "failure carries no counterexample");
    if (v.counterexample) {
      c.expect(v.counterexample->reg == 0 && v.counterexample->lane == 0,
               "counterexample does not point at xmm0 element 0");
    }
  }
  c.detail = " (" + std::to_string(total) + " solutions re-verified)";
  return c;
}

Check criterion8_commutation() {
  Check c;
  std::vector<Transition> ts =
      instantiate(g_isa, {0, 1, 2, 3, 4, 5, 6, 7}, {"c"});
  std::mt19937 rng(20260810);
  const char *pool[] = {"a", "b", "c", "x", "y"};
  uint64_t checked = 0;
  for (const Transition &t : ts) {
    for (int i = 0; i < 1000; ++i) {
      // Random ground state: packed registers over symbols and literals.
      MachineState s;
      Assignment asg;
      asg.values["c"] = rng();
      for (const char *sym : pool)
        asg.values[sym] = rng();
      for (int r = 0; r < kNumRegisters; ++r) {
        Lanes lanes;
        for (int l = 0; l < kNumLanes; ++l) {
          switch (rng() % 3) {
          case 0:
            lanes[l] = Term::integer(static_cast<int32_t>(rng()));
            break;
          case 1:
            lanes[l] = Term::symbol(pool[rng() % 5]);
            break;
          default:
            lanes[l] = Term::app(Op::Add, Term::symbol(pool[rng() % 5]),
                                 Term::integer(static_cast<int32_t>(rng() % 7)));
            break;
          }
        }
        s.regs[r] = RegisterContent::packed(lanes);
      }
      auto symbolic = apply_transition(t, s);
      if (!symbolic.has_value()) {
        c.expect(false, "transition not applicable to a packed state");
        break;
      }
      ConcreteState expect = concretize(s, asg);
      concrete_step(expect, t.instr, asg, g_isa);
      ConcreteState got = concretize(*symbolic, asg);
      if (got != expect) {
        c.expect(false,
                 "lane mismatch for " + print_instruction(t.instr));
        break;
      }
      ++checked;
    }
    if (!c.ok)
      break;
  }
  c.detail = " (" + std::to_string(ts.size()) + " transitions x 1000 states, " +
             std::to_string(checked) + " checks)";
  return c;
}

Check criterion9_randomized_queries() {
  Check c;
  CostModel toy = parse_cost_model(read_file(data_path("toy.cycles")));
  std::mt19937 rng(97);
  const std::vector<std::string> all_mnemonics = {
      "movdqa", "movd",    "pxor",      "pand",      "por",    "paddd",
      "psubd",  "pcmpeqd", "punpckldq", "punpckhdq", "psrldq", "pslldq"};

  int done = 0, attempts = 0;
  while (done < 50 && attempts < 600 && c.ok) {
    ++attempts;
    std::vector<int> regs = {static_cast<int>(rng() % 4),
                             static_cast<int>(4 + rng() % 4)};
    std::set<std::string> allow = {"movdqa"};
    while (allow.size() < 4)
      allow.insert(all_mnemonics[rng() % all_mnemonics.size()]);
    std::vector<Transition> ts = instantiate(g_isa, regs, {"c"}, allow);
    std::vector<Transition> ts_toy =
        instantiate(g_isa, regs, {"c"}, allow, &toy);

    MachineState start = opaque_start(
        {"xmm0", "xmm1", "xmm2", "xmm3", "xmm4", "xmm5", "xmm6", "xmm7"});
    start.regs[regs[0]] = RegisterContent::packed(
        {Term::integer(static_cast<int32_t>(rng() % 4)), Term::symbol("a"),
         Term::symbol("b"), Term::integer(static_cast<int32_t>(rng() % 4))});

    // Random walk to a reachable goal.
    MachineState cur = start;
    int goal_reg = -1;
    for (int step = 0, n = 1 + static_cast<int>(rng() % 3); step < n; ++step)
      for (int tries = 0; tries < 32; ++tries) {
        const Transition &t = ts[rng() % ts.size()];
        auto next = apply_transition(t, cur);
        if (next && !states_equal(*next, cur)) {
          cur = *next;
          goal_reg = t.instr.dst;
          break;
        }
      }
    if (goal_reg < 0 || cur.regs[goal_reg].is_opaque)
      continue;
    std::array<RegisterGoal, kNumRegisters> goal_regs{};
    goal_regs[goal_reg] = cur.regs[goal_reg].lanes;
    GoalPattern goal = GoalPattern::make(goal_regs);

    SearchBudget budget;
    budget.max_depth = 4;
    budget.max_solutions = 64;
    SearchResult ids = ids_search(start, goal, ts, budget);
    SearchResult bfs = bfs_search(start, goal, ts, budget);
    SearchResult cost = cost_search(start, goal, ts_toy, budget);
    if (ids.solutions.empty()) // walk goal out of reach within depth 4
      continue;
    ++done;

    int64_t last = -1;
    for (const Sequence &s : ids.solutions) {
      c.expect(s.length >= last, "ids lengths decreased");
      last = s.length;
    }
    last = -1;
    for (const Sequence &s : bfs.solutions) {
      c.expect(s.length >= last, "bfs lengths decreased");
      last = s.length;
    }
    last = -1;
    for (const Sequence &s : cost.solutions) {
      c.expect(s.total_cycles >= last, "cost cycles decreased");
      last = s.total_cycles;
    }
    c.expect(!bfs.solutions.empty(), "bfs found nothing where ids did");
    if (!bfs.solutions.empty())
      c.expect(ids.solutions[0].length == bfs.solutions[0].length,
               "ids/bfs first-solution lengths differ");

    c.expect(!cost.solutions.empty(), "cost engine found nothing");
    if (!cost.solutions.empty()) {
      // Independent enumeration up to the claimed optimum.
      int64_t claimed = cost.solutions[0].total_cycles;
      std::function<int64_t(const MachineState &, int, int64_t)> best_cost =
          [&](const MachineState &s, int depth, int64_t spent) -> int64_t {
        int64_t best = match_goal(s, goal, false) ? spent : -1;
        if (depth == 0)
          return best;
        for (const Transition &t : ts_toy) {
          if (spent + t.cycles > claimed)
            continue;
          auto next = apply_transition(t, s);
          if (!next)
            continue;
          int64_t sub = best_cost(*next, depth - 1, spent + t.cycles);
          if (sub >= 0 && (best < 0 || sub < best))
            best = sub;
        }
        return best;
      };
      c.expect(best_cost(start, 4, 0) == claimed,
               "cost-engine optimum disagrees with enumeration");
    }
  }
  c.expect(done == 50, "generated only " + std::to_string(done) +
                           " of 50 satisfiable queries");
  c.detail = " (" + std::to_string(done) + " queries, " +
             std::to_string(attempts) + " attempts)";
  return c;
}

} // namespace

int main() {
  struct Criterion {
    int number;
    const char *name;
    Check (*run)();
  };
  const Criterion criteria[] = {
      {1, "zeroing", criterion1_zeroing},
      {2, "all-ones", criterion2_allones},
      {3, "broadcast", criterion3_broadcast},
      {4, "register copy", criterion4_copy},
      {5, "horizontal sum", criterion5_horizontal_sum},
      {6, "empty sequence", criterion6_empty_sequence},
      {7, "oracle soundness", criterion7_oracle_soundness},
      {8, "symbolic/concrete commutation", criterion8_commutation},
      {9, "ordering properties", criterion9_randomized_queries},
  };

  try {
    g_isa = parse_isa(read_file(data_path("default.isa")));
  } catch (const std::exception &e) {
    std::cout << "[FAIL] cannot load default ISA: " << e.what() << "\n";
    return 1;
  }

  int failures = 0;
  for (const Criterion &criterion : criteria) {
    Check c;
    try {
      c = criterion.run();
    } catch (const std::exception &e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    std::cout << (c.ok ? "[PASS]" : "[FAIL]") << " criterion "
              << criterion.number << ": " << criterion.name;
    if (!c.ok)
      std::cout << " — " << c.detail;
    else if (!c.detail.empty())
      std::cout << c.detail;
    std::cout << "\n";
    std::cout.flush();
    failures += c.ok ? 0 : 1;
  }
  if (failures)
    std::cout << failures << " criterion(s) failed\n";
  else
    std::cout << "all criteria passed\n";
  return failures;
}

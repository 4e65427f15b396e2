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

// Times the serial IDS reference against the OpenMP fan-out kernel on the
// horizontal-sum enumeration (the heaviest shipped query), plus serial vs
// parallel verification sampling. Usage: bench_search <isa-file> [threads].

#include "iforge/report.hpp"
#include "iforge/verify.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace iforge;

namespace {

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    std::exit(1);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

} // namespace

int main(int argc, char **argv) {
  if (argc < 2) {
    std::cerr << "usage: bench_search <isa-file> [threads]\n";
    return 1;
  }
  int threads = argc > 2 ? std::atoi(argv[2]) : 0;
#ifdef _OPENMP
  if (threads <= 0)
    threads = omp_get_max_threads();
#else
  if (threads <= 0)
    threads = 1;
  std::cerr << "note: built without OpenMP, parallel run degenerates to "
               "serial\n";
#endif

  Isa isa = parse_isa(read_file(argv[1]));

  // Horizontal sum, restricted like the shipped hsum query, enumerating
  // every solution at depth <= 6.
  MachineState start = opaque_start(
      {"xmm0", "xmm1", "xmm2", "xmm3", "xmm4", "xmm5", "xmm6", "xmm7"});
  start.regs[0] = RegisterContent::packed(
      {parse_term("d"), parse_term("c"), parse_term("b"), parse_term("a")});
  std::array<RegisterGoal, kNumRegisters> goal_regs{};
  goal_regs[0] = Lanes{parse_term("(d+b)+(c+a)"), Term::wildcard(),
                       Term::wildcard(), Term::wildcard()};
  GoalPattern goal = GoalPattern::make(goal_regs);

  std::set<std::string> allow = {"movdqa", "psrldq", "paddd", "punpckldq"};
  std::vector<Transition> transitions =
      instantiate(isa, {0, 1}, {}, allow);

  SearchBudget budget;
  budget.max_depth = 6;
  budget.max_solutions = 1000000;

  std::cout << "transitions: " << transitions.size() << "\n";

  auto t0 = std::chrono::steady_clock::now();
  SearchResult serial = ids_search(start, goal, transitions, budget);
  double serial_time = seconds_since(t0);
  std::cout << "ids serial:   " << serial_time << " s, "
            << serial.solutions.size() << " solutions, "
            << serial.stats.states_expanded << " states\n";

  t0 = std::chrono::steady_clock::now();
  SearchResult parallel =
      ids_search_parallel(start, goal, transitions, budget, false, threads);
  double parallel_time = seconds_since(t0);
  std::cout << "ids parallel: " << parallel_time << " s, "
            << parallel.solutions.size() << " solutions, "
            << parallel.stats.states_expanded << " states (threads="
            << threads << ")\n";

  bool same = serial.solutions.size() == parallel.solutions.size();
  for (size_t i = 0; same && i < serial.solutions.size(); ++i)
    same = sequence_equal(serial.solutions[i], parallel.solutions[i]);
  std::cout << "outputs identical: " << (same ? "yes" : "NO") << "\n";
  if (serial_time > 0 && parallel_time > 0)
    std::cout << "speedup: " << serial_time / parallel_time << "x\n";

  // Verification sampling on the first solution.
  if (!serial.solutions.empty()) {
    const Sequence &seq = serial.solutions.front();
    const int samples = 200000;
    t0 = std::chrono::steady_clock::now();
    Verdict v1 = verify_sequence(start, goal, {}, seq.instrs, isa, samples,
                                 42, 1);
    double verify_serial = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    Verdict v2 = verify_sequence(start, goal, {}, seq.instrs, isa, samples,
                                 42, threads);
    double verify_parallel = seconds_since(t0);
    std::cout << "verify serial:   " << verify_serial << " s ("
              << (v1.pass ? "pass" : "fail") << ", " << samples
              << " samples)\n";
    std::cout << "verify parallel: " << verify_parallel << " s ("
              << (v2.pass ? "pass" : "fail") << ")\n";
    if (verify_parallel > 0)
      std::cout << "verify speedup: " << verify_serial / verify_parallel
                << "x\n";
  }

  return same ? 0 : 1;
}

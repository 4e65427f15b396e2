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

#ifndef IFORGE_QUERY_HPP
#define IFORGE_QUERY_HPP

#include "iforge/machine.hpp"
#include "iforge/search.hpp"

#include <optional>
#include <string>
#include <vector>

namespace iforge {

enum class Engine : uint8_t { Ids, Bfs, Cost };

const char *engine_name(Engine e);

/// A parsed and validated search problem. Start registers are always fully
/// specified: registers without a `start` line default to opaque contents
/// tagged with the register's own name, and a wildcard in a start position
/// is a hard parse error.
struct Query {
  std::string name;
  std::vector<int> registers; // usable by instructions, sorted unique
  MachineState start;
  std::vector<std::string> scalars;
  GoalPattern goal;
  std::optional<std::vector<std::string>> allow;
  Engine engine = Engine::Ids;
  bool normalize = false;
  bool dedup = false;
  SearchBudget budget;
  int verify_samples = 100;
  uint32_t seed = 1;

  /// Registers that are neither packed at start nor constrained in the
  /// goal; used by rename deduplication.
  std::set<int> scratch_registers() const;
};

/// Parses the line-oriented query grammar ('#' comments):
///
///   name <ident>
///   registers xmm0,xmm1,...          (default: all eight)
///   start xmm0 = [e3,e2,e1,e0]
///   start xmm0 = opaque <tag>
///   scalars c, i
///   goal xmm0 = [p3,p2,p1,p0]        (lanes are expressions or _)
///   allow movdqa, psrldq, ...
///   engine ids | bfs | cost
///   max_depth N / max_cost N / max_solutions N / max_states N
///   verify_samples N / seed N / normalize on|off / dedup_renames on|off
///
/// Throws ParseError with a 1-based line number. A `_` in a start lane is
/// rejected: an underconstrained start state would let the search assume
/// favorable initial register contents instead of synthesizing them.
Query parse_query(std::string_view text);

} // namespace iforge

#endif // IFORGE_QUERY_HPP

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

#ifndef IFORGE_REPORT_HPP
#define IFORGE_REPORT_HPP

#include "iforge/isa.hpp"
#include "iforge/query.hpp"
#include "iforge/verify.hpp"

#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

namespace iforge {

enum class EmitFormat : uint8_t { Asm, Json, Table };

struct SolutionRecord {
  Sequence seq;
  std::string verdict; // "pass", "fail", "unverified"
  std::optional<Counterexample> counterexample;
};

/// The hand-off artifact of one query run: everything a code generator
/// maintainer needs to review before hard-wiring a sequence. Elapsed time
/// is carried for diagnostics but excluded from the emitters so that runs
/// with identical inputs and seed produce byte-identical output.
struct Report {
  Query query;
  size_t transition_count = 0;
  SearchStatus status = SearchStatus::Ok;
  bool truncated = false;
  SearchStats stats;
  std::vector<SolutionRecord> solutions;
  double elapsed_seconds = 0.0;
};

struct RunOptions {
  const CostModel *cost_model = nullptr;
  int threads = 1; // >1 selects the parallel IDS kernel and parallel verify
};

/// Parses nothing itself: takes a validated query and ISA, instantiates
/// the transitions, runs the requested engine, optionally deduplicates
/// register renames, and verifies every emitted solution.
Report run_query(const Query &query, const Isa &isa,
                 const RunOptions &options = {});

/// One Intel-syntax line per instruction, solutions separated by comment
/// headers.
std::string emit_asm(const Report &report);

/// Schema-stable JSON of the full report (minus elapsed time).
std::string emit_json(const Report &report);

/// `idiom <query-name>: <instr>; <instr>; ...` — one line per retained
/// solution under a single header line.
std::string emit_table(const Report &report);

std::string emit(const Report &report, EmitFormat format);

nlohmann::json report_to_json(const Report &report);
/// Rebuilds a report from emitted JSON. Round-trips: re-serializing the
/// result reproduces the input.
Report report_from_json(const nlohmann::json &j);

} // namespace iforge

#endif // IFORGE_REPORT_HPP

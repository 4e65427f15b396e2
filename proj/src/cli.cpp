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

#include "iforge/cli.hpp"
#include "iforge/error.hpp"
#include "iforge/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace iforge {

namespace {

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string describe(const ParseError &e) {
  std::string msg = e.what();
  if (e.line >= 0)
    msg += " (line " + std::to_string(e.line) + ")";
  return msg;
}

} // namespace

int cli_main(int argc, const char *const *argv) {
  CLI::App app{"exhaustive search for SIMD data-manipulation instruction "
               "sequences"};
  app.require_subcommand(1);

  CLI::App *run = app.add_subcommand(
      "run", "search one query file over an ISA description");

  std::string isa_path, query_path, cost_path, out_path;
  std::string engine_opt, emit_opt = "asm";
  int max_depth = -2, max_solutions = 0, verify_samples = -1, threads = 1;
  int64_t seed = -1;
  bool dedup = false, normalize = false;

  run->add_option("--isa", isa_path, "ISA description file")->required();
  run->add_option("--query", query_path, "query file")->required();
  run->add_option("--engine", engine_opt, "ids|bfs|cost (overrides the query)")
      ->check(CLI::IsMember({"ids", "bfs", "cost"}));
  run->add_option("--cost-model", cost_path, "cycle cost file");
  run->add_option("--max-depth", max_depth, "override the query's max_depth")
      ->check(CLI::NonNegativeNumber);
  run->add_option("--max-solutions", max_solutions,
                  "override the query's max_solutions")
      ->check(CLI::PositiveNumber);
  run->add_flag("--dedup-renames", dedup,
                "collapse solutions differing only in scratch registers");
  run->add_flag("--normalize-goal", normalize,
                "match goals modulo associativity/commutativity");
  run->add_option("--verify-samples", verify_samples,
                  "samples per solution (0 disables verification)")
      ->check(CLI::NonNegativeNumber);
  run->add_option("--seed", seed, "verification RNG seed")
      ->check(CLI::NonNegativeNumber);
  run->add_option("--emit", emit_opt, "asm|json|table (default asm)")
      ->check(CLI::IsMember({"asm", "json", "table"}));
  run->add_option("--out", out_path, "write output to a file instead of stdout");
  run->add_option("--threads", threads,
                  "parallel fan-out for ids and verification (default 1)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    Isa isa = parse_isa(read_file(isa_path));
    Query query = parse_query(read_file(query_path));

    CostModel cost_model;
    RunOptions options;
    options.threads = threads;
    if (!cost_path.empty()) {
      cost_model = parse_cost_model(read_file(cost_path));
      options.cost_model = &cost_model;
    }

    if (!engine_opt.empty()) {
      query.engine = engine_opt == "ids"   ? Engine::Ids
                     : engine_opt == "bfs" ? Engine::Bfs
                                           : Engine::Cost;
    }
    if (max_depth >= 0)
      query.budget.max_depth = max_depth;
    if (max_solutions > 0)
      query.budget.max_solutions = max_solutions;
    if (verify_samples >= 0)
      query.verify_samples = verify_samples;
    if (seed >= 0)
      query.seed = static_cast<uint32_t>(seed);
    if (dedup)
      query.dedup = true;
    if (normalize)
      query.normalize = true;
    if ((query.engine == Engine::Ids || query.engine == Engine::Bfs) &&
        !query.budget.depth_bounded())
      throw std::invalid_argument("this engine requires max_depth");

    Report report = run_query(query, isa, options);

    EmitFormat format = emit_opt == "json"    ? EmitFormat::Json
                        : emit_opt == "table" ? EmitFormat::Table
                                              : EmitFormat::Asm;
    std::string output = emit(report, format);
    if (!out_path.empty()) {
      std::ofstream out(out_path, std::ios::binary);
      if (!out)
        throw std::runtime_error("cannot write " + out_path);
      out << output;
    } else {
      std::cout << output;
    }

    std::cerr << query.name << ": " << report.solutions.size()
              << " solution(s), " << report.stats.states_expanded
              << " states expanded, " << report.elapsed_seconds << " s\n";

    bool any_failed = false;
    for (const SolutionRecord &rec : report.solutions)
      any_failed = any_failed || rec.verdict == "fail";
    if (any_failed)
      return 3;
    if (report.solutions.empty())
      return 2;
    return 0;
  } catch (const ParseError &e) {
    std::cerr << "error: " << describe(e) << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace iforge

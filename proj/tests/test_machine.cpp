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

#include "iforge/machine.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace iforge;
using namespace iforge::test;

namespace {

const std::array<std::string, 8> kTags = {"xmm0", "xmm1", "xmm2", "xmm3",
                                          "xmm4", "xmm5", "xmm6", "xmm7"};

Lanes int_lanes(int32_t e3, int32_t e2, int32_t e1, int32_t e0) {
  return {Term::integer(e0), Term::integer(e1), Term::integer(e2),
          Term::integer(e3)};
}

GoalPattern only_xmm0(Lanes lanes) {
  std::array<RegisterGoal, kNumRegisters> regs{};
  regs[0] = lanes;
  return GoalPattern::make(regs);
}

} // namespace

TEST_SUITE_BEGIN("machine");

TEST_CASE("match_goal: zeroed register against the zero goal") {
  MachineState s = opaque_start(kTags);
  s.regs[0] = RegisterContent::packed(int_lanes(0, 0, 0, 0));
  CHECK(match_goal(s, only_xmm0(int_lanes(0, 0, 0, 0)), false));
  // Register independence: the other registers stay unconstrained.
  s.regs[3] = RegisterContent::packed(int_lanes(8, 7, 6, 5));
  CHECK(match_goal(s, only_xmm0(int_lanes(0, 0, 0, 0)), false));
}

TEST_CASE("goal pattern must constrain something") {
  std::array<RegisterGoal, kNumRegisters> regs{};
  CHECK_THROWS_AS(GoalPattern::make(regs), std::invalid_argument);
}

TEST_CASE("opaque content never matches a packed pattern") {
  MachineState s = opaque_start(kTags);
  Lanes wilds = {Term::wildcard(), Term::wildcard(), Term::wildcard(),
                 Term::wildcard()};
  CHECK_FALSE(match_goal(s, only_xmm0(wilds), false));
}

TEST_CASE("match_goal: wildcard lanes and symbolic lanes") {
  MachineState s = opaque_start(kTags);
  s.regs[0] = RegisterContent::packed({parse_term("(d+b)+(c+a)"),
                                       Term::symbol("q"), Term::symbol("r"),
                                       Term::symbol("t")});
  Lanes goal = {parse_term("(d+b)+(c+a)"), Term::wildcard(),
                Term::wildcard(), Term::wildcard()};
  CHECK(match_goal(s, only_xmm0(goal), false));
  Lanes commuted = {parse_term("(c+a)+(d+b)"), Term::wildcard(),
                    Term::wildcard(), Term::wildcard()};
  CHECK_FALSE(match_goal(s, only_xmm0(commuted), false));
  CHECK(match_goal(s, only_xmm0(commuted), true)); // normalized matching
}

TEST_CASE("state_key: equal iff structurally equal") {
  MachineState a = opaque_start(kTags);
  MachineState b = opaque_start(kTags);
  CHECK(state_key(a) == state_key(b));

  a.regs[2] = RegisterContent::packed({parse_term("(a+0)"), Term::integer(1),
                                       Term::integer(2), Term::integer(3)});
  b.regs[2] = RegisterContent::packed({parse_term("a"), Term::integer(1),
                                       Term::integer(2), Term::integer(3)});
  CHECK(state_key(a) != state_key(b)); // (a+0) and a are different terms
}

TEST_CASE("state_key: injective on random states") {
  std::mt19937 rng(2718);
  for (int i = 0; i < 10000; ++i) {
    MachineState a = random_packed_state(rng);
    MachineState b;
    if (rng() % 2) {
      b = a;
      if (rng() % 2) {
        // Perturb one lane.
        int r = rng() % kNumRegisters, l = rng() % kNumLanes;
        b.regs[r].lanes[l] =
            Term::app(Op::Add, b.regs[r].lanes[l], Term::integer(0));
      }
    } else {
      b = random_packed_state(rng);
    }
    CHECK((state_key(a) == state_key(b)) == states_equal(a, b));
  }
}

TEST_CASE("opaque_start: canonical unusable state") {
  MachineState s = opaque_start(kTags);
  for (int r = 0; r < kNumRegisters; ++r) {
    CHECK(s.regs[r].is_opaque);
    CHECK(s.regs[r].tag == kTags[r]);
  }
  std::array<std::string, 8> dup = kTags;
  dup[5] = "xmm1";
  CHECK_THROWS_AS(opaque_start(dup), std::invalid_argument);
}

TEST_CASE("display format") {
  MachineState s = opaque_start(kTags);
  s.regs[0] = RegisterContent::packed(int_lanes(0, 0, 0, 0));
  s.regs[3] = RegisterContent::packed(int_lanes(8, 7, 6, 5));
  CHECK(print_state(s) ==
        "[ [0,0,0,0], xmm1, xmm2, [8,7,6,5], xmm4, xmm5, xmm6, xmm7 ]");

  std::array<RegisterGoal, kNumRegisters> regs{};
  regs[0] = Lanes{Term::wildcard(), Term::wildcard(), Term::wildcard(),
                  Term::integer(0)};
  CHECK(print_goal(GoalPattern::make(regs)) ==
        "[ [0,_,_,_], _, _, _, _, _, _, _ ]");
}

TEST_CASE("register names") {
  CHECK(register_name(0) == "xmm0");
  CHECK(parse_register("xmm7") == 7);
  CHECK_FALSE(parse_register("xmm8").has_value());
  CHECK_FALSE(parse_register("ymm0").has_value());
}

TEST_SUITE_END();

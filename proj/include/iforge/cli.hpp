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

#ifndef IFORGE_CLI_HPP
#define IFORGE_CLI_HPP

namespace iforge {

/// The idiom-forge command line. Exit codes: 0 — at least one solution
/// (verified, unless --verify-samples 0); 1 — usage or parse errors;
/// 2 — no solution within budget; 3 — a solution failed verification.
int cli_main(int argc, const char *const *argv);

} // namespace iforge

#endif // IFORGE_CLI_HPP

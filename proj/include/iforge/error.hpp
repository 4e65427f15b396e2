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

#ifndef IFORGE_ERROR_HPP
#define IFORGE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace iforge {

/// Error for malformed text input (expressions, ISA files, query files).
/// `line` is 1-based when the input is line-oriented, -1 otherwise;
/// `column` is a 0-based offset into the offending line or expression.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &what, int line = -1, int column = -1)
      : std::runtime_error(what), line(line), column(column) {}

  int line;
  int column;
};

} // namespace iforge

#endif // IFORGE_ERROR_HPP

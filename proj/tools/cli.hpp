// Copyright 2026 The rblink Authors
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rbl::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,      // usage errors and anything not listed below
  kParse = 2,        // unreadable input, malformed table, bad record
  kConstraint = 3,   // tied weights, duplicate arcs, self-loops
  kExhausted = 4,    // attempts exhausted, size or loop-length limits
  kMismatch = 5,     // overlap rows disagree when gluing
};

/// Runs the command line `args` (without the program name). `in`, `out`
/// and `err` stand for stdin, stdout and stderr when a path is "-".
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace rbl::cli

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

#include <stdexcept>
#include <string>
#include <string_view>

namespace rbl {

enum class ErrorCode {
  ParseError,
  DuplicateArc,
  TiedWeights,
  SelfLoop,
  OutOfRange,
  KTooLarge,
  InvalidDigraph,
  MalformedTable,
  KUnsupported,
  AttemptsExhausted,
  NTooLarge,
  Not3Concordant,
  OverlapRowMismatch,
  DimensionMismatch,
  SizeMismatch,
  Incompatible,
};

std::string_view to_string(ErrorCode code);

/// All library failures are reported through this exception; `code()` lets
/// the CLI map them onto its exit-code taxonomy.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rbl

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

#include "rbl/error.hpp"

#include <random>

#include "rbl/rng.hpp"

namespace rbl {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateArc: return "DuplicateArc";
    case ErrorCode::TiedWeights: return "TiedWeights";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::InvalidDigraph: return "InvalidDigraph";
    case ErrorCode::MalformedTable: return "MalformedTable";
    case ErrorCode::KUnsupported: return "KUnsupported";
    case ErrorCode::AttemptsExhausted: return "AttemptsExhausted";
    case ErrorCode::NTooLarge: return "NTooLarge";
    case ErrorCode::Not3Concordant: return "Not3Concordant";
    case ErrorCode::OverlapRowMismatch: return "OverlapRowMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::Incompatible: return "Incompatible";
  }
  return "Unknown";
}

RngSeed entropy_seed() {
  std::random_device device;
  return RngSeed{(static_cast<std::uint64_t>(device()) << 32) ^ device()};
}

}  // namespace rbl

// Copyright 2026 The qscovert Authors
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

#include "qscovert/errors.hpp"

namespace qscovert {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid input";
    case ErrorKind::kDimensionMismatch: return "dimension mismatch";
    case ErrorKind::kDegenerateSpan: return "degenerate span";
    case ErrorKind::kDomain: return "domain error";
    case ErrorKind::kOutOfRegime: return "out of regime";
    case ErrorKind::kSamplingStalled: return "sampling stalled";
    case ErrorKind::kInsufficientTrials: return "insufficient trials";
    case ErrorKind::kInvalidSlack: return "invalid slack";
    case ErrorKind::kSlackExhausted: return "slack exhausted";
    case ErrorKind::kDegenerateEstimate: return "degenerate estimate";
    case ErrorKind::kConfig: return "config error";
  }
  return "error";
}

}  // namespace qscovert

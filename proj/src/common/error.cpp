// Copyright 2026 The mapsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "common/error.hpp"

namespace mapsynth {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Argument: return "argument error";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::Io: return "I/O error";
    case ErrorCode::Network: return "network error";
    case ErrorCode::Format: return "format error";
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::Internal: return "internal error";
  }
  return "unknown error";
}

}  // namespace mapsynth

// Copyright 2026 The PFS Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pfs/errors.hpp"

namespace pfs {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::usage: return "usage";
    case ErrorCode::domain: return "domain";
    case ErrorCode::rank: return "rank";
    case ErrorCode::parameter: return "parameter";
    case ErrorCode::capacity: return "capacity";
    case ErrorCode::insufficient_shares: return "insufficient_shares";
    case ErrorCode::corruption: return "corruption";
    case ErrorCode::key_reuse: return "key_reuse";
    case ErrorCode::scale: return "scale";
    case ErrorCode::audit_failure: return "audit_failure";
    case ErrorCode::io: return "io";
    case ErrorCode::format: return "format";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace pfs

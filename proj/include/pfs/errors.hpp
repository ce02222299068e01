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

#pragma once

#include <stdexcept>
#include <string>

namespace pfs {

// Error taxonomy for the whole library.  Every failure surfaced across a
// module boundary is an Error carrying one of these codes; the C API and the
// CLI map codes to stable status/exit values (see pfs.h).
enum class ErrorCode {
  usage,                // API misuse: mixed fields, shape mismatch, bad call order
  domain,               // value outside the field / division by zero
  rank,                 // singular linear system
  parameter,            // invalid protocol parameters (t, z, L, n, lengths)
  capacity,             // payload exceeds the n*(t-z)-symbol storage capacity
  insufficient_shares,  // fewer than t distinct shares offered for decode
  corruption,           // shares or padding are mutually inconsistent
  key_reuse,            // one-time key material consumed twice
  scale,                // exact-audit guard rail exceeded (atom count / atom width)
  audit_failure,        // an audited information-theoretic property failed
  io,                   // filesystem error (open/read/write)
  format,               // malformed or truncated record file
  internal,             // invariant violation inside the library
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Throws Error(code, message); spelled as a function so call sites read as a
// statement of the failed condition.
[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace pfs

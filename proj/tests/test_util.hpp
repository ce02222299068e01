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

#include <string>
#include <utility>

#include "doctest.h"
#include "pfs/errors.hpp"

// Runs fn, requiring it to throw pfs::Error with exactly the given code.
template <typename Fn>
void expect_error(pfs::ErrorCode code, Fn&& fn) {
  try {
    std::forward<Fn>(fn)();
    FAIL_CHECK("expected Error(" << pfs::error_code_name(code)
                                 << ") but nothing was thrown");
  } catch (const pfs::Error& e) {
    CHECK_MESSAGE(std::string(pfs::error_code_name(e.code())) ==
                      pfs::error_code_name(code),
                  "got Error(" << pfs::error_code_name(e.code())
                               << "): " << e.what());
  }
}

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

#include <cstdint>
#include <string>

namespace pfs {

// Exact rational with 64-bit numerator/denominator, always normalized
// (gcd 1, denominator > 0).  Entropies and mutual informations in this
// library are rationals by construction -- distributions arising from
// uniform inputs through deterministic maps have power-of-two atom counts --
// so equality tests are exact, never epsilon comparisons.  Overflow in an
// intermediate product throws Error(internal); the audit's scale guards keep
// every legitimate value far below that.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d);  // normalizes; throws on d == 0
  static Rational from_int(std::int64_t n) { return Rational(n, 1); }

  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;

  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;

  // "p/q", or just "p" for integers.
  std::string to_string() const;
  double to_double() const;
};

}  // namespace pfs

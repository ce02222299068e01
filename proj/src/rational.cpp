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

#include "pfs/rational.hpp"

#include <numeric>

#include "pfs/errors.hpp"

namespace pfs {

namespace {

using Wide = __int128;

std::int64_t narrow(Wide v, const char* what) {
  if (v > Wide(INT64_MAX) || v < Wide(INT64_MIN)) {
    fail(ErrorCode::internal, std::string("rational overflow in ") + what);
  }
  return static_cast<std::int64_t>(v);
}

Wide wide_gcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const Wide r = a % b;
    a = b;
    b = r;
  }
  return a;
}

Rational make(Wide num, Wide den) {
  if (den == 0) {
    fail(ErrorCode::usage, "rational with zero denominator");
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const Wide g = num == 0 ? den : wide_gcd(num, den);
  num /= g;
  den /= g;
  Rational r;
  r.num = narrow(num, "numerator");
  r.den = narrow(den, "denominator");
  return r;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) { *this = make(n, d); }

Rational Rational::operator+(const Rational& o) const {
  return make(Wide(num) * o.den + Wide(o.num) * den, Wide(den) * o.den);
}

Rational Rational::operator-(const Rational& o) const {
  return make(Wide(num) * o.den - Wide(o.num) * den, Wide(den) * o.den);
}

Rational Rational::operator*(const Rational& o) const {
  return make(Wide(num) * o.num, Wide(den) * o.den);
}

bool Rational::operator<(const Rational& o) const {
  return Wide(num) * o.den < Wide(o.num) * den;
}

std::string Rational::to_string() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

double Rational::to_double() const {
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace pfs

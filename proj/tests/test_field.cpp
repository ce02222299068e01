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

#include "pfs/field.hpp"

#include <cstdint>
#include <random>

#include "doctest.h"
#include "test_util.hpp"

using pfs::ErrorCode;
using pfs::FieldElement;
using pfs::FieldSpec;
using pfs::Matrix;
using pfs::Symbol;

TEST_CASE("default reduction polynomials are the documented constants") {
  const unsigned expected[] = {0x3, 0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11B};
  for (unsigned m = 1; m <= 8; ++m) {
    CHECK(FieldSpec::default_poly(m) == expected[m - 1]);
    CHECK(FieldSpec::get(m).m() == m);
    CHECK(FieldSpec::get(m).order() == (1u << m));
    CHECK(FieldSpec::get(m).reduction_poly() == expected[m - 1]);
  }
}

TEST_CASE("construction rejects bad widths and reducible polynomials") {
  expect_error(ErrorCode::parameter, [] { FieldSpec f(0, 0x3); });
  expect_error(ErrorCode::parameter, [] { FieldSpec f(9, 0x211); });
  expect_error(ErrorCode::parameter, [] { FieldSpec::default_poly(0); });
  expect_error(ErrorCode::parameter, [] { FieldSpec::default_poly(9); });
  // x^2 + 1 = (x + 1)^2 and x^8 + 1 = (x + 1)^8 are reducible.
  expect_error(ErrorCode::parameter, [] { FieldSpec f(2, 0x5); });
  expect_error(ErrorCode::parameter, [] { FieldSpec f(8, 0x101); });
  // Degree must match the width exactly.
  expect_error(ErrorCode::parameter, [] { FieldSpec f(3, 0x7); });
  expect_error(ErrorCode::parameter, [] { FieldSpec f(2, 0x13); });
}

TEST_CASE("GF(4) multiplication table") {
  const FieldSpec& f = FieldSpec::get(2);
  const Symbol table[4][4] = {{0, 0, 0, 0},
                              {0, 1, 2, 3},
                              {0, 2, 3, 1},
                              {0, 3, 1, 2}};
  for (Symbol a = 0; a < 4; ++a) {
    for (Symbol b = 0; b < 4; ++b) {
      CHECK(f.mul(a, b) == table[a][b]);
      CHECK(f.mul_reduce(a, b) == table[a][b]);
    }
  }
}

TEST_CASE("GF(256) and GF(8) reference products") {
  const FieldSpec& f8 = FieldSpec::get(8);
  CHECK(f8.mul(0x53, 0xCA) == 0x01);
  CHECK(f8.inv(0x53) == 0xCA);
  CHECK(f8.mul(0x02, 0x87) == 0x15);
  CHECK(f8.mul(0xFF, 0xFF) == 0x13);

  const FieldSpec& f3 = FieldSpec::get(3);
  CHECK(f3.mul(0x5, 0x6) == 0x3);
  CHECK(f3.mul(0x7, 0x7) == 0x3);
}

TEST_CASE("field axioms hold exhaustively for m <= 4") {
  for (unsigned m = 1; m <= 4; ++m) {
    const FieldSpec& f = FieldSpec::get(m);
    const unsigned q = f.order();
    for (unsigned a = 0; a < q; ++a) {
      CHECK(f.add(static_cast<Symbol>(a), 0) == a);
      CHECK(f.mul(static_cast<Symbol>(a), 1) == a);
      CHECK(f.mul(static_cast<Symbol>(a), 0) == 0);
      if (a != 0) {
        const Symbol ai = f.inv(static_cast<Symbol>(a));
        CHECK(f.mul(static_cast<Symbol>(a), ai) == 1);
        // a^(q-1) = 1 in the multiplicative group.
        CHECK(f.pow(static_cast<Symbol>(a), q - 1) == 1);
      }
      for (unsigned b = 0; b < q; ++b) {
        const Symbol ab = f.mul(static_cast<Symbol>(a), static_cast<Symbol>(b));
        CHECK(ab == f.mul(static_cast<Symbol>(b), static_cast<Symbol>(a)));
        for (unsigned c = 0; c < q; ++c) {
          const Symbol bc = f.mul(static_cast<Symbol>(b), static_cast<Symbol>(c));
          CHECK(f.mul(ab, static_cast<Symbol>(c)) ==
                f.mul(static_cast<Symbol>(a), bc));
          CHECK(f.mul(static_cast<Symbol>(a),
                      f.add(static_cast<Symbol>(b), static_cast<Symbol>(c))) ==
                f.add(f.mul(static_cast<Symbol>(a), static_cast<Symbol>(b)),
                      f.mul(static_cast<Symbol>(a), static_cast<Symbol>(c))));
        }
      }
    }
  }
}

TEST_CASE("table multiplication agrees with the reduce reference path") {
  // Exhaustive at small widths, randomized at full width.
  for (unsigned m = 1; m <= 4; ++m) {
    const FieldSpec& f = FieldSpec::get(m);
    for (unsigned a = 0; a < f.order(); ++a) {
      for (unsigned b = 0; b < f.order(); ++b) {
        CHECK(f.mul(static_cast<Symbol>(a), static_cast<Symbol>(b)) ==
              f.mul_reduce(static_cast<Symbol>(a), static_cast<Symbol>(b)));
      }
    }
  }
  const FieldSpec& f8 = FieldSpec::get(8);
  std::mt19937 gen(12345);
  std::uniform_int_distribution<unsigned> dist(0, 255);
  for (int i = 0; i < 10000; ++i) {
    const Symbol a = static_cast<Symbol>(dist(gen));
    const Symbol b = static_cast<Symbol>(dist(gen));
    CHECK(f8.mul(a, b) == f8.mul_reduce(a, b));
  }
}

TEST_CASE("domain checks and inversion of zero") {
  const FieldSpec& f = FieldSpec::get(2);
  expect_error(ErrorCode::domain, [&] { f.check_symbol(4); });
  expect_error(ErrorCode::domain, [&] { f.inv(0); });
  expect_error(ErrorCode::domain, [&] { f.element(4); });
  CHECK(f.element(3) == 3);
  f.check_symbol(3);  // must not throw
}

TEST_CASE("elements of different fields refuse to mix") {
  const FieldSpec& f2 = FieldSpec::get(2);
  const FieldSpec& f3 = FieldSpec::get(3);
  const FieldElement a(f2, 1);
  const FieldElement b(f3, 1);
  expect_error(ErrorCode::usage, [&] { (void)(a + b); });
  expect_error(ErrorCode::usage, [&] { (void)(a * b); });
  expect_error(ErrorCode::domain, [&] { FieldElement bad(f2, 7); });
}

TEST_CASE("linear solver: Vandermonde roundtrip, singular and shape errors") {
  const FieldSpec& f = FieldSpec::get(2);
  // f(x) = 2 + 3x evaluated at {1, 2}; solving must return the coefficients.
  const Symbol c0 = 2, c1 = 3;
  Matrix a;
  std::vector<FieldElement> rhs;
  for (Symbol x : {Symbol{1}, Symbol{2}}) {
    a.push_back({FieldElement(f, 1), FieldElement(f, x)});
    rhs.emplace_back(f, f.add(c0, f.mul(c1, x)));
  }
  const auto sol = pfs::solve_linear(a, rhs);
  REQUIRE(sol.size() == 2);
  CHECK(sol[0].value() == c0);
  CHECK(sol[1].value() == c1);

  // Two equal rows cannot be solved.
  Matrix singular{{FieldElement(f, 1), FieldElement(f, 2)},
                  {FieldElement(f, 1), FieldElement(f, 2)}};
  std::vector<FieldElement> b2{FieldElement(f, 1), FieldElement(f, 2)};
  expect_error(ErrorCode::rank, [&] { pfs::solve_linear(singular, b2); });

  // Mismatched shapes are a usage error.
  std::vector<FieldElement> b1{FieldElement(f, 1)};
  expect_error(ErrorCode::usage, [&] { pfs::solve_linear(singular, b1); });
  expect_error(ErrorCode::usage, [&] {
    pfs::solve_linear(Matrix{}, std::vector<FieldElement>{});
  });
}

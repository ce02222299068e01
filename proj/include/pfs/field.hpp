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
#include <vector>

namespace pfs {

// One field symbol.  Symbols are polynomial bit patterns; a value is valid
// for GF(2^m) iff it is < 2^m.  Bulk payloads travel as std::vector<Symbol>
// with an explicit FieldSpec giving them meaning.
using Symbol = std::uint8_t;

// Binary extension field GF(2^m) for 1 <= m <= 8, as polynomials over GF(2)
// modulo a fixed irreducible reduction polynomial (bit i = coefficient of
// x^i).  Addition is XOR.  Multiplication exists in two independent
// implementations:
//
//   * mul_reduce -- carry-less multiply followed by polynomial long
//     division.  This is the reference path; it is kept in-tree so the table
//     path can always be cross-checked against it.
//   * mul -- log/antilog tables over a multiplicative generator, built with
//     mul_reduce at construction time.
class FieldSpec {
 public:
  // Throws Error(parameter) unless 1 <= m <= 8 and reduction_poly is an
  // irreducible polynomial of degree exactly m (checked exhaustively).
  FieldSpec(unsigned m, unsigned reduction_poly);

  // Canonical field of each width, using default_poly(m).
  static const FieldSpec& get(unsigned m);

  // Default reduction polynomials:
  //   m=1: 0x3, m=2: 0x7, m=3: 0xB, m=4: 0x13,
  //   m=5: 0x25, m=6: 0x43, m=7: 0x83, m=8: 0x11B.
  static unsigned default_poly(unsigned m);

  unsigned m() const { return m_; }
  unsigned order() const { return q_; }  // q = 2^m
  unsigned reduction_poly() const { return poly_; }

  // a + b == a - b (characteristic 2).
  Symbol add(Symbol a, Symbol b) const { return a ^ b; }

  Symbol mul(Symbol a, Symbol b) const;         // table path
  Symbol mul_reduce(Symbol a, Symbol b) const;  // reference path
  Symbol inv(Symbol a) const;                   // throws Error(domain) on a == 0
  Symbol pow(Symbol a, std::uint64_t e) const;

  // The field element whose bit pattern is the integer v (the evaluation
  // point convention used by the share codec).  Throws Error(domain) unless
  // v < q.
  Symbol element(unsigned v) const;

  // Throws Error(domain) if s is not a valid symbol of this field.
  void check_symbol(Symbol s) const;

  // Fields are equal iff they have the same width and reduction polynomial.
  bool operator==(const FieldSpec& other) const {
    return m_ == other.m_ && poly_ == other.poly_;
  }
  bool operator!=(const FieldSpec& other) const { return !(*this == other); }

 private:
  unsigned m_;
  unsigned q_;
  unsigned poly_;
  Symbol generator_;
  // exp_[i] = generator^i for i in [0, 2(q-1)); the doubled range lets mul
  // skip the mod (q-1) on exponent sums.
  std::vector<Symbol> exp_;
  std::vector<int> log_;  // log_[x] for x in [1, q); log_[0] unused
};

// Scalar bound to its field.  Arithmetic between elements of different
// fields throws Error(usage); this is the safe currency for the exact
// linear algebra below.
class FieldElement {
 public:
  FieldElement(const FieldSpec& spec, Symbol value);

  Symbol value() const { return value_; }
  const FieldSpec& spec() const { return *spec_; }
  bool is_zero() const { return value_ == 0; }

  FieldElement operator+(const FieldElement& other) const;
  FieldElement operator-(const FieldElement& other) const { return *this + other; }
  FieldElement operator*(const FieldElement& other) const;
  FieldElement inverse() const;

  bool operator==(const FieldElement& other) const;
  bool operator!=(const FieldElement& other) const { return !(*this == other); }

 private:
  void check_same_field(const FieldElement& other) const;

  const FieldSpec* spec_;
  Symbol value_;
};

using Matrix = std::vector<std::vector<FieldElement>>;

// Solves A x = b exactly by Gaussian elimination with pivot search.
// Throws Error(rank) if A is singular and Error(usage) on shape or field
// mismatch.
std::vector<FieldElement> solve_linear(const Matrix& a,
                                       const std::vector<FieldElement>& b);

}  // namespace pfs

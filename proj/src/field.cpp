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

#include <array>
#include <sstream>

#include "pfs/errors.hpp"

namespace pfs {

namespace {

int poly_degree(unsigned p) {
  int d = -1;
  while (p) {
    ++d;
    p >>= 1;
  }
  return d;
}

// Carry-less product of two GF(2) polynomials (results fit 16 bits for
// inputs of degree <= 7).
unsigned clmul(unsigned a, unsigned b) {
  unsigned r = 0;
  while (b) {
    if (b & 1u) r ^= a;
    a <<= 1;
    b >>= 1;
  }
  return r;
}

// Remainder of a modulo p over GF(2).
unsigned poly_mod(unsigned a, unsigned p) {
  const int dp = poly_degree(p);
  int da = poly_degree(a);
  while (da >= dp) {
    a ^= p << (da - dp);
    da = poly_degree(a);
  }
  return a;
}

// Exhaustive trial division: p (degree m <= 8) is irreducible iff no
// polynomial of degree 1..m/2 divides it.  The search space is at most 31
// candidates, so this is instant and leaves nothing to probabilistic tests.
bool is_irreducible(unsigned p) {
  const int m = poly_degree(p);
  if (m < 1) return false;
  for (int d = 1; d <= m / 2; ++d) {
    for (unsigned q = 1u << d; q < (2u << d); ++q) {
      if (poly_mod(p, q) == 0) return false;
    }
  }
  return true;
}

}  // namespace

unsigned FieldSpec::default_poly(unsigned m) {
  // The lexicographically smallest irreducible of each degree; m=8 uses the
  // common x^8 + x^4 + x^3 + x + 1.
  static constexpr std::array<unsigned, 9> kPolys = {
      0,     // unused
      0x3,   // x + 1
      0x7,   // x^2 + x + 1
      0xB,   // x^3 + x + 1
      0x13,  // x^4 + x + 1
      0x25,  // x^5 + x^2 + 1
      0x43,  // x^6 + x + 1
      0x83,  // x^7 + x + 1
      0x11B  // x^8 + x^4 + x^3 + x + 1
  };
  if (m < 1 || m > 8) {
    fail(ErrorCode::parameter,
         "field width m must be in [1, 8], got " + std::to_string(m));
  }
  return kPolys[m];
}

FieldSpec::FieldSpec(unsigned m, unsigned reduction_poly)
    : m_(m), q_(0), poly_(reduction_poly) {
  if (m < 1 || m > 8) {
    fail(ErrorCode::parameter,
         "field width m must be in [1, 8], got " + std::to_string(m));
  }
  q_ = 1u << m;
  if (poly_degree(poly_) != static_cast<int>(m)) {
    std::ostringstream msg;
    msg << "reduction polynomial 0x" << std::hex << poly_
        << " does not have degree " << std::dec << m;
    fail(ErrorCode::parameter, msg.str());
  }
  if (!is_irreducible(poly_)) {
    std::ostringstream msg;
    msg << "reduction polynomial 0x" << std::hex << poly_ << " is reducible";
    fail(ErrorCode::parameter, msg.str());
  }

  // Find a multiplicative generator by trial, using only the reference
  // multiply: the reduction polynomial need not be primitive (0x11B is not),
  // so x itself may have small order.
  const unsigned group = q_ - 1;
  generator_ = 1;
  for (unsigned g = (q_ == 2 ? 1u : 2u); g < q_; ++g) {
    // order of g: smallest k with g^k == 1
    unsigned order = 1;
    Symbol acc = static_cast<Symbol>(g);
    while (acc != 1) {
      acc = mul_reduce(acc, static_cast<Symbol>(g));
      ++order;
    }
    if (order == group) {
      generator_ = static_cast<Symbol>(g);
      break;
    }
  }

  // exp_ spans two periods so mul() can index log(a) + log(b) directly.
  exp_.assign(2 * group, 1);
  log_.assign(q_, -1);
  Symbol acc = 1;
  for (unsigned i = 0; i < group; ++i) {
    exp_[i] = acc;
    exp_[i + group] = acc;
    log_[acc] = static_cast<int>(i);
    acc = mul_reduce(acc, generator_);
  }
  if (acc != 1) {
    fail(ErrorCode::internal, "generator order mismatch while building tables");
  }
}

const FieldSpec& FieldSpec::get(unsigned m) {
  static const std::array<FieldSpec, 8> kFields = {
      FieldSpec(1, default_poly(1)), FieldSpec(2, default_poly(2)),
      FieldSpec(3, default_poly(3)), FieldSpec(4, default_poly(4)),
      FieldSpec(5, default_poly(5)), FieldSpec(6, default_poly(6)),
      FieldSpec(7, default_poly(7)), FieldSpec(8, default_poly(8))};
  if (m < 1 || m > 8) {
    fail(ErrorCode::parameter,
         "field width m must be in [1, 8], got " + std::to_string(m));
  }
  return kFields[m - 1];
}

void FieldSpec::check_symbol(Symbol s) const {
  if (s >= q_) {
    fail(ErrorCode::domain, "symbol value " + std::to_string(s) +
                                " outside GF(2^" + std::to_string(m_) + ")");
  }
}

Symbol FieldSpec::mul_reduce(Symbol a, Symbol b) const {
  check_symbol(a);
  check_symbol(b);
  return static_cast<Symbol>(poly_mod(clmul(a, b), poly_));
}

Symbol FieldSpec::mul(Symbol a, Symbol b) const {
  check_symbol(a);
  check_symbol(b);
  if (a == 0 || b == 0) return 0;
  return exp_[static_cast<unsigned>(log_[a]) + static_cast<unsigned>(log_[b])];
}

Symbol FieldSpec::inv(Symbol a) const {
  check_symbol(a);
  if (a == 0) {
    fail(ErrorCode::domain, "zero has no multiplicative inverse");
  }
  const unsigned group = q_ - 1;
  return exp_[(group - static_cast<unsigned>(log_[a])) % group];
}

Symbol FieldSpec::pow(Symbol a, std::uint64_t e) const {
  check_symbol(a);
  if (e == 0) return 1;
  if (a == 0) return 0;
  const unsigned group = q_ - 1;
  const std::uint64_t exp = (static_cast<std::uint64_t>(log_[a]) * (e % group)) % group;
  return exp_[static_cast<unsigned>(exp)];
}

Symbol FieldSpec::element(unsigned v) const {
  if (v >= q_) {
    fail(ErrorCode::domain, "no element of value " + std::to_string(v) +
                                " in GF(2^" + std::to_string(m_) + ")");
  }
  return static_cast<Symbol>(v);
}

FieldElement::FieldElement(const FieldSpec& spec, Symbol value)
    : spec_(&spec), value_(value) {
  spec.check_symbol(value);
}

void FieldElement::check_same_field(const FieldElement& other) const {
  if (*spec_ != *other.spec_) {
    fail(ErrorCode::usage, "mixing elements of GF(2^" + std::to_string(spec_->m()) +
                               ") and GF(2^" + std::to_string(other.spec_->m()) + ")");
  }
}

FieldElement FieldElement::operator+(const FieldElement& other) const {
  check_same_field(other);
  return FieldElement(*spec_, spec_->add(value_, other.value_));
}

FieldElement FieldElement::operator*(const FieldElement& other) const {
  check_same_field(other);
  return FieldElement(*spec_, spec_->mul(value_, other.value_));
}

FieldElement FieldElement::inverse() const {
  return FieldElement(*spec_, spec_->inv(value_));
}

bool FieldElement::operator==(const FieldElement& other) const {
  check_same_field(other);
  return value_ == other.value_;
}

std::vector<FieldElement> solve_linear(const Matrix& a,
                                       const std::vector<FieldElement>& b) {
  const std::size_t n = a.size();
  if (n == 0 || b.size() != n) {
    fail(ErrorCode::usage, "solve_linear needs a nonempty square system");
  }
  const FieldSpec& spec = b.front().spec();
  for (const auto& row : a) {
    if (row.size() != n) {
      fail(ErrorCode::usage, "solve_linear matrix is not square");
    }
    for (const auto& e : row) {
      if (e.spec() != spec) {
        fail(ErrorCode::usage, "solve_linear entries come from different fields");
      }
    }
  }
  for (const auto& e : b) {
    if (e.spec() != spec) {
      fail(ErrorCode::usage, "solve_linear entries come from different fields");
    }
  }

  // Augmented Gaussian elimination; any nonzero pivot is exact in a field.
  std::vector<std::vector<Symbol>> aug(n, std::vector<Symbol>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j].value();
    aug[i][n] = b[i].value();
  }

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && aug[pivot][col] == 0) ++pivot;
    if (pivot == n) {
      fail(ErrorCode::rank, "singular system: no pivot in column " +
                                std::to_string(col));
    }
    std::swap(aug[col], aug[pivot]);
    const Symbol inv_pivot = spec.inv(aug[col][col]);
    for (std::size_t j = col; j <= n; ++j) {
      aug[col][j] = spec.mul(aug[col][j], inv_pivot);
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || aug[row][col] == 0) continue;
      const Symbol factor = aug[row][col];
      for (std::size_t j = col; j <= n; ++j) {
        aug[row][j] = spec.add(aug[row][j], spec.mul(factor, aug[col][j]));
      }
    }
  }

  std::vector<FieldElement> x;
  x.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    x.emplace_back(spec, aug[i][n]);
  }
  return x;
}

}  // namespace pfs

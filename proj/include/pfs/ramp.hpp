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
#include <span>
#include <utility>
#include <vector>

#include "pfs/field.hpp"
#include "pfs/rng.hpp"

namespace pfs {

// Parameters of the (t, z, L) ramp sharing code over GF(2^m):
//   * any t of the L shares determine the secret exactly;
//   * any z shares are statistically independent of the secret;
//   * subsets of size i in between leak the ramp fraction (i-z)/(t-z).
//
// The ramp regime requires 0 < z < t <= L <= q.  Servers 1..q-1 evaluate the
// block polynomials at the distinct nonzero points alpha_l = l; when L = q
// the last server takes the extended evaluation point at infinity, whose
// share is the leading coefficient -- a pure randomness coordinate, so every
// threshold property survives the extension (the decoder's mixed system
// stays nonsingular, and the audit verifies the leakage profile exactly).
struct RampParams {
  const FieldSpec* field = nullptr;
  unsigned servers = 0;    // L
  unsigned threshold = 0;  // t
  unsigned privacy = 0;    // z

  void validate() const;

  // True for the one server (id == q) that sits on the infinity point.
  bool at_infinity(unsigned server_id) const;

  // Secret symbols packed per polynomial block.
  unsigned block_len() const { return threshold - privacy; }
  // Shares are secret_len / (t-z) symbols long.
  std::size_t share_len(std::size_t secret_len) const;
  // Encoding consumes secret_len * z / (t-z) tape symbols.
  std::size_t tape_len(std::size_t secret_len) const;
};

// Uniform local randomness consumed by one encode.  Kept as a first-class
// object so resource accounting can measure exactly what was drawn.
struct RandomTape {
  std::vector<Symbol> symbols;

  static RandomTape draw(const FieldSpec& field, std::size_t count, SymbolRng& rng);
  static RandomTape from_symbols(const FieldSpec& field, std::vector<Symbol> symbols);
};

// All L shares of one secret; shares[l-1] belongs to server l.
struct ShareBundle {
  RampParams params;
  std::vector<std::vector<Symbol>> shares;
};

// Splits the secret into blocks of t-z symbols.  Block b defines
//
//   f_b(x) = s_{b,1} + s_{b,2} x + ... + s_{b,t-z} x^{t-z-1}
//            + r_{b,1} x^{t-z} + ... + r_{b,z} x^{t-1},
//
// where s_{b,*} are the block's secret symbols and r_{b,*} the next z tape
// symbols.  Share l collects f_b(alpha_l) over all blocks, with alpha_l the
// field element of integer value l; the server at infinity (l == q, only
// reachable when L == q) collects the leading coefficients r_{b,z} instead.
//
// Throws Error(parameter) if secret_len is not a multiple of t-z or the tape
// has the wrong length, Error(domain) on invalid symbols.
ShareBundle ramp_encode(const RampParams& params, std::span<const Symbol> secret,
                        const RandomTape& tape);

// Allocation-free core of ramp_encode: writes share l into out[l-1], each of
// length share_len(secret.size()).  The audit enumerator drives this directly.
void ramp_encode_into(const RampParams& params, std::span<const Symbol> secret,
                      std::span<const Symbol> tape,
                      std::span<std::vector<Symbol>> out);

// Recovers the secret from shares given as (server_id, symbols) pairs.
// Uses the lexicographically first t server ids; any further shares are
// checked for consistency with the interpolated polynomials and a mismatch
// throws Error(corruption).  Throws Error(insufficient_shares) when fewer
// than t distinct server ids are offered.
std::vector<Symbol> ramp_decode(
    const RampParams& params,
    const std::vector<std::pair<unsigned, std::vector<Symbol>>>& shares);

// Exact leakage of any subset of subset_size shares about a secret of
// secret_len symbols, in bits:
//
//   max(0, min(subset_size, t) - z) / (t - z) * secret_len * m.
//
// The value is always an integer number of bits because share vectors are
// whole symbols; returned as such.
std::uint64_t ramp_subset_leakage_bits(const RampParams& params,
                                       unsigned subset_size,
                                       std::size_t secret_len);

}  // namespace pfs

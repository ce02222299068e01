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

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "pfs/field.hpp"

namespace pfs {

namespace detail {
// ChaCha20 block function (RFC 7539): 32-byte key, 4-byte block counter,
// 12-byte nonce -> 64 bytes of keystream.  Exposed for test vectors.
void chacha20_block(const std::array<std::uint32_t, 8>& key,
                    std::uint32_t counter,
                    const std::array<std::uint32_t, 3>& nonce,
                    std::array<std::uint8_t, 64>& out);

// splitmix64 step, used to expand (seed, stream) into ChaCha key material.
std::uint64_t splitmix64(std::uint64_t& state);
}  // namespace detail

// Uniform field-symbol source backed by a ChaCha20 keystream.
//
// Seeded instances are fully deterministic and bit-stable across platforms:
// the (seed, stream) pair is expanded through splitmix64 into the ChaCha key
// and nonce, and symbols are m-bit slices of the keystream bitstream (exactly
// uniform over GF(2^m) since q = 2^m).  Independent stream ids yield
// independent keystreams for the same seed.  Unseeded instances key
// themselves from std::random_device.
class SymbolRng {
 public:
  static SymbolRng seeded(std::uint64_t seed, std::uint64_t stream = 0);
  static SymbolRng system_entropy();

  Symbol next(const FieldSpec& field);
  void fill(const FieldSpec& field, std::span<Symbol> out);
  std::vector<Symbol> draw(const FieldSpec& field, std::size_t count);

 private:
  SymbolRng(const std::array<std::uint32_t, 8>& key,
            const std::array<std::uint32_t, 3>& nonce);
  void refill();
  std::uint32_t take_bits(unsigned count);

  std::array<std::uint32_t, 8> key_;
  std::array<std::uint32_t, 3> nonce_;
  std::uint32_t counter_;
  std::array<std::uint8_t, 64> block_;
  unsigned bit_pos_;  // consumed bits within block_
};

}  // namespace pfs

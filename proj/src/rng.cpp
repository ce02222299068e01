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

#include "pfs/rng.hpp"

#include <random>

#include "pfs/errors.hpp"

namespace pfs {

namespace detail {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {

inline std::uint32_t rotl32(std::uint32_t v, int n) {
  return (v << n) | (v >> (32 - n));
}

inline void quarter_round(std::uint32_t& a, std::uint32_t& b, std::uint32_t& c,
                          std::uint32_t& d) {
  a += b; d ^= a; d = rotl32(d, 16);
  c += d; b ^= c; b = rotl32(b, 12);
  a += b; d ^= a; d = rotl32(d, 8);
  c += d; b ^= c; b = rotl32(b, 7);
}

}  // namespace

void chacha20_block(const std::array<std::uint32_t, 8>& key,
                    std::uint32_t counter,
                    const std::array<std::uint32_t, 3>& nonce,
                    std::array<std::uint8_t, 64>& out) {
  std::array<std::uint32_t, 16> state = {
      0x61707865u, 0x3320646Eu, 0x79622D32u, 0x6B206574u,
      key[0], key[1], key[2], key[3],
      key[4], key[5], key[6], key[7],
      counter, nonce[0], nonce[1], nonce[2]};
  std::array<std::uint32_t, 16> x = state;
  for (int round = 0; round < 10; ++round) {
    quarter_round(x[0], x[4], x[8], x[12]);
    quarter_round(x[1], x[5], x[9], x[13]);
    quarter_round(x[2], x[6], x[10], x[14]);
    quarter_round(x[3], x[7], x[11], x[15]);
    quarter_round(x[0], x[5], x[10], x[15]);
    quarter_round(x[1], x[6], x[11], x[12]);
    quarter_round(x[2], x[7], x[8], x[13]);
    quarter_round(x[3], x[4], x[9], x[14]);
  }
  for (int i = 0; i < 16; ++i) {
    const std::uint32_t word = x[i] + state[i];
    out[4 * i + 0] = static_cast<std::uint8_t>(word);
    out[4 * i + 1] = static_cast<std::uint8_t>(word >> 8);
    out[4 * i + 2] = static_cast<std::uint8_t>(word >> 16);
    out[4 * i + 3] = static_cast<std::uint8_t>(word >> 24);
  }
}

}  // namespace detail

SymbolRng::SymbolRng(const std::array<std::uint32_t, 8>& key,
                     const std::array<std::uint32_t, 3>& nonce)
    : key_(key), nonce_(nonce), counter_(0), bit_pos_(512) {}

SymbolRng SymbolRng::seeded(std::uint64_t seed, std::uint64_t stream) {
  // Expand (seed, stream) into key and nonce through splitmix64.  Both
  // chains are perturbed by fixed constants so (seed=s, stream=t) and
  // (seed=t, stream=s) do not collide.
  std::array<std::uint32_t, 8> key;
  std::uint64_t ks = seed ^ 0xD6E8FEB86659FD93ull;
  for (int i = 0; i < 4; ++i) {
    const std::uint64_t w = detail::splitmix64(ks);
    key[2 * i] = static_cast<std::uint32_t>(w);
    key[2 * i + 1] = static_cast<std::uint32_t>(w >> 32);
  }
  std::array<std::uint32_t, 3> nonce;
  std::uint64_t ns = stream ^ 0xA5A5A5A55A5A5A5Aull;
  const std::uint64_t n0 = detail::splitmix64(ns);
  const std::uint64_t n1 = detail::splitmix64(ns);
  nonce[0] = static_cast<std::uint32_t>(n0);
  nonce[1] = static_cast<std::uint32_t>(n0 >> 32);
  nonce[2] = static_cast<std::uint32_t>(n1);
  return SymbolRng(key, nonce);
}

SymbolRng SymbolRng::system_entropy() {
  std::random_device rd;
  std::array<std::uint32_t, 8> key;
  for (auto& w : key) w = rd();
  std::array<std::uint32_t, 3> nonce;
  for (auto& w : nonce) w = rd();
  return SymbolRng(key, nonce);
}

void SymbolRng::refill() {
  detail::chacha20_block(key_, counter_, nonce_, block_);
  if (++counter_ == 0) {
    // 2^32 blocks = 256 GiB of keystream; nothing here comes close.
    fail(ErrorCode::internal, "keystream counter wrapped");
  }
  bit_pos_ = 0;
}

std::uint32_t SymbolRng::take_bits(unsigned count) {
  std::uint32_t v = 0;
  for (unsigned i = 0; i < count; ++i) {
    if (bit_pos_ >= 512) refill();
    const unsigned byte = bit_pos_ >> 3;
    const unsigned bit = 7 - (bit_pos_ & 7);  // MSB first within each byte
    v = (v << 1) | ((block_[byte] >> bit) & 1u);
    ++bit_pos_;
  }
  return v;
}

Symbol SymbolRng::next(const FieldSpec& field) {
  // m-bit slices of the keystream are exactly uniform over GF(2^m).
  return static_cast<Symbol>(take_bits(field.m()));
}

void SymbolRng::fill(const FieldSpec& field, std::span<Symbol> out) {
  for (auto& s : out) s = next(field);
}

std::vector<Symbol> SymbolRng::draw(const FieldSpec& field, std::size_t count) {
  std::vector<Symbol> out(count);
  fill(field, out);
  return out;
}

}  // namespace pfs

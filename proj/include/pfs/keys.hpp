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
#include <vector>

#include "pfs/field.hpp"
#include "pfs/rng.hpp"

namespace pfs {

// One user's pre-shared one-time key material: an independent uniform
// key vector of n symbols per server, indexed by server id 1..L.
//
// Keys are strictly one-shot.  consume() hands out a server's key exactly
// once and throws Error(key_reuse) on any later attempt; there is no way to
// re-arm a ring.  Storing a second file requires generating fresh material.
// peek() exists for the server side of the protocol (the server holds a copy
// of the key it shares with the user) and for audits; it does not consume.
class KeyRing {
 public:
  static KeyRing generate(const FieldSpec& field, std::uint16_t user_id,
                          unsigned server_count, std::size_t n_symbols,
                          SymbolRng& rng);

  // Builds a ring from explicit material; per_server[l-1] is the key shared
  // with server l.  All vectors must have equal length and valid symbols.
  static KeyRing from_material(const FieldSpec& field, std::uint16_t user_id,
                               std::vector<std::vector<Symbol>> per_server);

  const FieldSpec& field() const { return *field_; }
  std::uint16_t user_id() const { return user_id_; }
  unsigned server_count() const { return static_cast<unsigned>(entries_.size()); }
  std::size_t n_symbols() const { return n_symbols_; }

  const std::vector<Symbol>& peek(unsigned server_id) const;
  std::vector<Symbol> consume(unsigned server_id);
  bool is_consumed(unsigned server_id) const;

 private:
  KeyRing(const FieldSpec& field, std::uint16_t user_id,
          std::vector<std::vector<Symbol>> entries);

  const FieldSpec* field_;
  std::uint16_t user_id_;
  std::size_t n_symbols_;
  std::vector<std::vector<Symbol>> entries_;  // [server_id - 1]
  std::vector<bool> consumed_;
};

// One-time-pad combination: out[i] = data[i] XOR key[i].  Involutive, so the
// same call both pads and unpads.  Throws Error(usage) on length mismatch and
// Error(domain) on symbols outside the field.
std::vector<Symbol> otp_apply(const FieldSpec& field,
                              std::span<const Symbol> data,
                              std::span<const Symbol> key);

// Allocation-free form; out must match the input length and may not alias
// a shorter buffer.  The audit enumerator drives this directly.
void otp_apply_into(const FieldSpec& field, std::span<const Symbol> data,
                    std::span<const Symbol> key, std::span<Symbol> out);

}  // namespace pfs

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
#include "pfs/keys.hpp"
#include "pfs/ramp.hpp"
#include "pfs/serialize.hpp"

namespace pfs {

// Per-user protocol parameters.  The user's file occupies n_symbols * (t-z)
// field symbols after padding; each server holds a pre-shared key of
// n_symbols symbols with this user.
struct UserParams {
  std::uint16_t user_id = 0;
  unsigned threshold = 0;   // t: shares needed to reconstruct
  unsigned privacy = 0;     // z: colluding servers that learn nothing
  std::uint32_t n_symbols = 0;  // per-server key length, symbols

  std::size_t file_symbols() const {
    return static_cast<std::size_t>(n_symbols) * (threshold - privacy);
  }
};

// Full deployment description: one field, L servers, one or more users.
struct StorageParams {
  const FieldSpec* field = nullptr;
  unsigned servers = 0;  // L
  std::vector<UserParams> users;

  void validate() const;
  const UserParams& user(std::uint16_t user_id) const;
  RampParams ramp_for(const UserParams& user) const;
};

// A user file in symbol form, padded to the exact storage capacity
// n * (t-z) symbols.  plaintext_len > 0 is the original payload length in
// BITS (the capacity itself is a bit count, so admission is decided at bit
// granularity); plaintext_len == 0 means the payload is raw symbols (used at
// audit scale, where files are single symbols).
struct FileRecord {
  std::uint16_t user_id = 0;
  std::uint64_t plaintext_len = 0;  // bits; 0 = raw symbol payload
  std::uint16_t pad_count = 0;
  std::vector<Symbol> symbols;

  // Packs the first bit_len bits of `bytes` (MSB first) into symbols and
  // pads with (pad_count mod q) filler symbols up to capacity.  Admission is
  // exact in bits: bit_len <= n*(t-z)*m is stored, one bit more throws
  // Error(capacity).  Throws Error(parameter) for an empty payload or
  // padding beyond the format's 16-bit pad counter, Error(usage) if bit_len
  // overruns the buffer.
  static FileRecord from_bits(const StorageParams& params, std::uint16_t user_id,
                              std::span<const std::uint8_t> bytes,
                              std::uint64_t bit_len);

  // Whole-byte convenience: from_bits with bit_len = 8 * bytes.size().
  static FileRecord from_bytes(const StorageParams& params, std::uint16_t user_id,
                               std::span<const std::uint8_t> bytes);

  // Adopts raw symbols.  The payload must fill capacity exactly: longer
  // throws Error(capacity), shorter Error(parameter).
  static FileRecord from_symbols(const StorageParams& params, std::uint16_t user_id,
                                 std::vector<Symbol> symbols);

  // Inverse of from_bits: ceil(plaintext_len / 8) bytes, bits beyond
  // plaintext_len zero.  Requires plaintext_len > 0.  Verifies the filler
  // symbols and throws Error(corruption) if they were altered.
  std::vector<std::uint8_t> to_bits(const FieldSpec& field) const;

  // Inverse of from_bytes; additionally requires plaintext_len % 8 == 0.
  std::vector<std::uint8_t> to_bytes(const FieldSpec& field) const;
};

// One user->server transmission over the public channel: the ramp share
// padded with the server's one-time key.
struct PublicMessage {
  wire::RecordMeta meta;
  std::vector<Symbol> payload;
};

// What a server retains after ingesting a message: payload = message XOR key,
// which equals the bare ramp share.
struct StoredShare {
  wire::RecordMeta meta;
  std::vector<Symbol> payload;
};

// Exact resource accounting, measured from the objects the protocol actually
// produced (never recomputed from formulas).
struct UserMeasurement {
  std::uint16_t user_id = 0;
  std::uint64_t file_bits = 0;        // padded file length
  std::uint64_t plaintext_bits = 0;   // pre-padding payload length
  std::uint64_t randomness_bits = 0;  // tape consumed by the encoder
  std::vector<std::uint64_t> message_bits;  // per server 1..L
  std::uint64_t message_total_bits = 0;
};

struct ResourceReport {
  std::vector<UserMeasurement> users;
  // Per-server stored bits, filled once shares exist (see measure_storage).
  std::vector<std::uint64_t> storage_bits;
};

struct StoreResult {
  std::vector<PublicMessage> messages;  // [server_id - 1]
  ResourceReport report;
};

// The storage protocol for one user:
//   1. ramp-encode the padded file with the tape into shares H_1..H_L;
//   2. consume this user's key K_l for each server and send
//      M_l = H_l XOR K_l over the public channel.
//
// The ring must match (field, user, L, n); the tape must hold exactly
// tape_len symbols.  Keys are consumed even though the caller keeps the
// ring: a second store with the same ring throws Error(key_reuse).
StoreResult store(const StorageParams& params, const FileRecord& file,
                  KeyRing& ring, const RandomTape& tape);

// Server side: strips the pad, S_l = M_l XOR K_l = H_l.  The server needs
// nothing but its own key copy and the one message addressed to it.
StoredShare server_ingest(const FieldSpec& field, const PublicMessage& message,
                          std::span<const Symbol> server_key);

// Rebuilds the file from stored shares.  All metadata is taken from the
// share headers (which must agree except for server_id); uses the canonical
// field of the recorded width.  Throws Error(insufficient_shares) below t
// distinct servers and Error(corruption) on inconsistent extras or damaged
// padding.
FileRecord reconstruct(const std::vector<StoredShare>& shares);

// Multi-user composition: independent store() runs per user (files[i],
// rings[i], tapes[i] matching params.users[i] order), one merged report.
// All inputs are validated before any key is consumed, so a bad entry aborts
// the whole batch without side effects.
struct MultiStoreResult {
  std::vector<std::vector<PublicMessage>> messages;  // [user index][server_id - 1]
  ResourceReport report;
};

MultiStoreResult multi_user_store(const StorageParams& params,
                                  const std::vector<FileRecord>& files,
                                  std::vector<KeyRing>& rings,
                                  const std::vector<RandomTape>& tapes);

// Sums stored bits per server over a set of shares; result[l-1] covers
// server l of params.
std::vector<std::uint64_t> measure_storage(const StorageParams& params,
                                           const std::vector<StoredShare>& shares);

}  // namespace pfs

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

#include "pfs/protocol.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "pfs/errors.hpp"

namespace pfs {

void StorageParams::validate() const {
  if (field == nullptr) {
    fail(ErrorCode::parameter, "storage parameters need a field");
  }
  if (users.empty()) {
    fail(ErrorCode::parameter, "storage parameters need at least one user");
  }
  std::set<std::uint16_t> seen;
  for (const UserParams& u : users) {
    if (!seen.insert(u.user_id).second) {
      fail(ErrorCode::parameter,
           "duplicate user id " + std::to_string(u.user_id));
    }
    if (u.n_symbols == 0) {
      fail(ErrorCode::parameter, "user " + std::to_string(u.user_id) +
                                     ": key length n must be positive");
    }
    ramp_for(u).validate();
  }
}

const UserParams& StorageParams::user(std::uint16_t user_id) const {
  for (const UserParams& u : users) {
    if (u.user_id == user_id) return u;
  }
  fail(ErrorCode::parameter, "unknown user id " + std::to_string(user_id));
}

RampParams StorageParams::ramp_for(const UserParams& u) const {
  RampParams ramp;
  ramp.field = field;
  ramp.servers = servers;
  ramp.threshold = u.threshold;
  ramp.privacy = u.privacy;
  return ramp;
}

FileRecord FileRecord::from_bits(const StorageParams& params,
                                 std::uint16_t user_id,
                                 std::span<const std::uint8_t> bytes,
                                 std::uint64_t bit_len) {
  params.validate();
  const UserParams& u = params.user(user_id);
  const FieldSpec& field = *params.field;
  const unsigned m = field.m();
  if (bit_len == 0) {
    fail(ErrorCode::parameter, "refusing to store an empty file");
  }
  if (bit_len > bytes.size() * 8) {
    fail(ErrorCode::usage, "bit length " + std::to_string(bit_len) +
                               " overruns the " + std::to_string(bytes.size()) +
                               "-byte buffer");
  }

  const std::size_t capacity = u.file_symbols();
  const std::uint64_t capacity_bits = static_cast<std::uint64_t>(capacity) * m;
  if (bit_len > capacity_bits) {
    fail(ErrorCode::capacity,
         "file of " + std::to_string(bit_len) + " bits exceeds the " +
             std::to_string(capacity_bits) +
             "-bit capacity n*(t-z) of this deployment");
  }

  // Mask everything past bit_len so the packed symbols depend on the first
  // bit_len bits alone.
  std::vector<std::uint8_t> masked(bytes.begin(),
                                   bytes.begin() + (bit_len + 7) / 8);
  if (bit_len % 8 != 0) {
    masked.back() &= static_cast<std::uint8_t>(0xFF << (8 - bit_len % 8));
  }
  std::vector<Symbol> symbols = wire::bytes_to_symbols(masked, m);
  symbols.resize((bit_len + m - 1) / m);  // drop all-zero overhang symbols

  const std::size_t pad = capacity - symbols.size();
  if (pad > 0xFFFF) {
    fail(ErrorCode::parameter,
         "padding of " + std::to_string(pad) +
             " symbols overflows the format's 16-bit pad counter");
  }

  FileRecord record;
  record.user_id = user_id;
  record.plaintext_len = bit_len;
  record.pad_count = static_cast<std::uint16_t>(pad);
  const Symbol filler = static_cast<Symbol>(pad % field.order());
  symbols.resize(capacity, filler);
  record.symbols = std::move(symbols);
  return record;
}

FileRecord FileRecord::from_bytes(const StorageParams& params,
                                  std::uint16_t user_id,
                                  std::span<const std::uint8_t> bytes) {
  return from_bits(params, user_id, bytes,
                   static_cast<std::uint64_t>(bytes.size()) * 8);
}

FileRecord FileRecord::from_symbols(const StorageParams& params,
                                    std::uint16_t user_id,
                                    std::vector<Symbol> symbols) {
  params.validate();
  const UserParams& u = params.user(user_id);
  const std::size_t capacity = u.file_symbols();
  if (symbols.size() > capacity) {
    fail(ErrorCode::capacity,
         "payload of " + std::to_string(symbols.size()) +
             " symbols exceeds the capacity n*(t-z) = " +
             std::to_string(capacity) + " of this deployment");
  }
  if (symbols.size() < capacity) {
    fail(ErrorCode::parameter,
         "raw symbol payloads must fill capacity exactly: got " +
             std::to_string(symbols.size()) + " of " + std::to_string(capacity));
  }
  for (Symbol s : symbols) params.field->check_symbol(s);

  FileRecord record;
  record.user_id = user_id;
  record.plaintext_len = 0;
  record.pad_count = 0;
  record.symbols = std::move(symbols);
  return record;
}

namespace {

void verify_padding(const FileRecord& record, const FieldSpec& field) {
  const Symbol filler = static_cast<Symbol>(record.pad_count % field.order());
  for (std::size_t i = record.symbols.size() - record.pad_count;
       i < record.symbols.size(); ++i) {
    if (record.symbols[i] != filler) {
      fail(ErrorCode::corruption, "filler symbols were altered in transit");
    }
  }
}

}  // namespace

std::vector<std::uint8_t> FileRecord::to_bits(const FieldSpec& field) const {
  if (plaintext_len == 0) {
    fail(ErrorCode::usage, "raw symbol payload has no byte representation");
  }
  verify_padding(*this, field);
  const unsigned m = field.m();
  if (plaintext_len > symbols.size() * static_cast<std::uint64_t>(m)) {
    fail(ErrorCode::corruption,
         "payload advertises more bits than the stored symbols hold");
  }
  // Unpack exactly plaintext_len bits.  Bits of the final byte past
  // plaintext_len stay zero: the capacity can end mid-byte, so the stored
  // symbols need not cover the rounded-up byte span at all.
  std::vector<std::uint8_t> bytes((plaintext_len + 7) / 8, 0);
  for (std::uint64_t j = 0; j < plaintext_len; ++j) {
    const std::size_t k = static_cast<std::size_t>(j / m);
    const unsigned pos = static_cast<unsigned>(j % m);
    if ((symbols[k] >> (m - 1 - pos)) & 1u) {
      bytes[static_cast<std::size_t>(j >> 3)] |=
          static_cast<std::uint8_t>(0x80u >> (j & 7));
    }
  }
  return bytes;
}

std::vector<std::uint8_t> FileRecord::to_bytes(const FieldSpec& field) const {
  if (plaintext_len % 8 != 0) {
    fail(ErrorCode::usage,
         "payload of " + std::to_string(plaintext_len) +
             " bits is not whole bytes; use to_bits");
  }
  return to_bits(field);
}

StoreResult store(const StorageParams& params, const FileRecord& file,
                  KeyRing& ring, const RandomTape& tape) {
  params.validate();
  const UserParams& u = params.user(file.user_id);
  const FieldSpec& field = *params.field;
  const RampParams ramp = params.ramp_for(u);

  if (file.symbols.size() != u.file_symbols()) {
    fail(ErrorCode::parameter,
         "file record holds " + std::to_string(file.symbols.size()) +
             " symbols; this deployment stores exactly " +
             std::to_string(u.file_symbols()));
  }
  if (ring.field() != field) {
    fail(ErrorCode::usage, "key ring belongs to a different field");
  }
  if (ring.user_id() != u.user_id) {
    fail(ErrorCode::usage, "key ring belongs to user " +
                               std::to_string(ring.user_id()) + ", not user " +
                               std::to_string(u.user_id));
  }
  if (ring.server_count() != params.servers) {
    fail(ErrorCode::usage, "key ring covers " +
                               std::to_string(ring.server_count()) +
                               " servers, deployment has " +
                               std::to_string(params.servers));
  }
  if (ring.n_symbols() != u.n_symbols) {
    fail(ErrorCode::usage, "key length " + std::to_string(ring.n_symbols()) +
                               " does not match the deployment's n = " +
                               std::to_string(u.n_symbols));
  }
  if (tape.symbols.size() != ramp.tape_len(file.symbols.size())) {
    fail(ErrorCode::parameter,
         "tape holds " + std::to_string(tape.symbols.size()) +
             " symbols but this store needs exactly " +
             std::to_string(ramp.tape_len(file.symbols.size())));
  }
  // Refuse before touching anything if any key was already used, so a store
  // either consumes the whole ring or none of it.
  for (unsigned l = 1; l <= params.servers; ++l) {
    if (ring.is_consumed(l)) {
      fail(ErrorCode::key_reuse,
           "one-time key for user " + std::to_string(u.user_id) + ", server " +
               std::to_string(l) + " was already consumed");
    }
  }

  const ShareBundle bundle = ramp_encode(ramp, file.symbols, tape);

  StoreResult result;
  result.messages.reserve(params.servers);
  UserMeasurement measure;
  measure.user_id = u.user_id;
  measure.file_bits = static_cast<std::uint64_t>(file.symbols.size()) * field.m();
  measure.plaintext_bits =
      file.plaintext_len > 0 ? file.plaintext_len : measure.file_bits;
  measure.randomness_bits =
      static_cast<std::uint64_t>(tape.symbols.size()) * field.m();

  for (unsigned l = 1; l <= params.servers; ++l) {
    const std::vector<Symbol> key = ring.consume(l);
    PublicMessage message;
    message.meta.m = field.m();
    message.meta.user_id = u.user_id;
    message.meta.server_id = static_cast<std::uint16_t>(l);
    message.meta.threshold = static_cast<std::uint8_t>(u.threshold);
    message.meta.privacy = static_cast<std::uint8_t>(u.privacy);
    message.meta.servers = static_cast<std::uint8_t>(params.servers);
    message.meta.n_symbols = static_cast<std::uint32_t>(bundle.shares[l - 1].size());
    message.meta.plaintext_len = file.plaintext_len;
    message.meta.pad_count = file.pad_count;
    message.payload = otp_apply(field, bundle.shares[l - 1], key);
    measure.message_bits.push_back(
        static_cast<std::uint64_t>(message.payload.size()) * field.m());
    measure.message_total_bits += measure.message_bits.back();
    result.messages.push_back(std::move(message));
  }

  result.report.users.push_back(std::move(measure));
  return result;
}

StoredShare server_ingest(const FieldSpec& field, const PublicMessage& message,
                          std::span<const Symbol> server_key) {
  if (message.meta.m != field.m()) {
    fail(ErrorCode::usage, "message field width " +
                               std::to_string(message.meta.m) +
                               " does not match the server's field");
  }
  if (message.payload.size() != message.meta.n_symbols) {
    fail(ErrorCode::corruption, "message payload length disagrees with header");
  }
  StoredShare share;
  share.meta = message.meta;
  share.payload = otp_apply(field, message.payload, server_key);
  return share;
}

FileRecord reconstruct(const std::vector<StoredShare>& shares) {
  if (shares.empty()) {
    fail(ErrorCode::insufficient_shares, "no shares offered");
  }
  const wire::RecordMeta& head = shares.front().meta;
  for (const StoredShare& s : shares) {
    if (!s.meta.same_object(head)) {
      fail(ErrorCode::corruption,
           "shares describe different stored objects (user/parameter mismatch)");
    }
    if (s.payload.size() != s.meta.n_symbols) {
      fail(ErrorCode::corruption, "share payload length disagrees with header");
    }
  }

  const FieldSpec& field = FieldSpec::get(head.m);
  RampParams ramp;
  ramp.field = &field;
  ramp.servers = head.servers;
  ramp.threshold = head.threshold;
  ramp.privacy = head.privacy;
  ramp.validate();

  std::vector<std::pair<unsigned, std::vector<Symbol>>> pairs;
  pairs.reserve(shares.size());
  for (const StoredShare& s : shares) {
    pairs.emplace_back(s.meta.server_id, s.payload);
  }

  FileRecord record;
  record.user_id = head.user_id;
  record.plaintext_len = head.plaintext_len;
  record.pad_count = head.pad_count;
  record.symbols = ramp_decode(ramp, pairs);
  if (record.pad_count > record.symbols.size()) {
    fail(ErrorCode::corruption, "pad counter exceeds the decoded payload");
  }
  verify_padding(record, field);
  return record;
}

MultiStoreResult multi_user_store(const StorageParams& params,
                                  const std::vector<FileRecord>& files,
                                  std::vector<KeyRing>& rings,
                                  const std::vector<RandomTape>& tapes) {
  params.validate();
  if (files.size() != params.users.size() || rings.size() != params.users.size() ||
      tapes.size() != params.users.size()) {
    fail(ErrorCode::usage,
         "multi_user_store needs one file, ring and tape per user");
  }

  // Validate the whole batch before consuming any key, so one bad user
  // cannot leave another's ring half spent.
  for (std::size_t i = 0; i < params.users.size(); ++i) {
    const UserParams& u = params.users[i];
    if (files[i].user_id != u.user_id || rings[i].user_id() != u.user_id) {
      fail(ErrorCode::usage,
           "files and rings must be ordered like params.users");
    }
    if (files[i].symbols.size() != u.file_symbols()) {
      fail(ErrorCode::parameter,
           "user " + std::to_string(u.user_id) + ": file record holds " +
               std::to_string(files[i].symbols.size()) + " symbols, expected " +
               std::to_string(u.file_symbols()));
    }
    if (rings[i].field() != *params.field ||
        rings[i].server_count() != params.servers ||
        rings[i].n_symbols() != u.n_symbols) {
      fail(ErrorCode::usage,
           "user " + std::to_string(u.user_id) + ": ring shape mismatch");
    }
    for (unsigned l = 1; l <= params.servers; ++l) {
      if (rings[i].is_consumed(l)) {
        fail(ErrorCode::key_reuse,
             "user " + std::to_string(u.user_id) + ": key for server " +
                 std::to_string(l) + " was already consumed");
      }
    }
    const RampParams ramp = params.ramp_for(u);
    if (tapes[i].symbols.size() != ramp.tape_len(files[i].symbols.size())) {
      fail(ErrorCode::parameter,
           "user " + std::to_string(u.user_id) + ": tape holds " +
               std::to_string(tapes[i].symbols.size()) + " symbols, needs " +
               std::to_string(ramp.tape_len(files[i].symbols.size())));
    }
  }

  MultiStoreResult result;
  result.messages.reserve(params.users.size());
  for (std::size_t i = 0; i < params.users.size(); ++i) {
    StoreResult one = store(params, files[i], rings[i], tapes[i]);
    result.messages.push_back(std::move(one.messages));
    result.report.users.push_back(std::move(one.report.users.front()));
  }
  return result;
}

std::vector<std::uint64_t> measure_storage(const StorageParams& params,
                                           const std::vector<StoredShare>& shares) {
  params.validate();
  std::vector<std::uint64_t> bits(params.servers, 0);
  for (const StoredShare& s : shares) {
    if (s.meta.server_id < 1 || s.meta.server_id > params.servers) {
      fail(ErrorCode::parameter,
           "share names server " + std::to_string(s.meta.server_id) +
               " outside this deployment");
    }
    bits[s.meta.server_id - 1] +=
        static_cast<std::uint64_t>(s.payload.size()) * params.field->m();
  }
  return bits;
}

}  // namespace pfs

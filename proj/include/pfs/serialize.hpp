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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pfs/field.hpp"

namespace pfs::wire {

// All record files share a fixed preamble: magic "PFS1", a type byte, a
// format version byte.  Multi-byte integers are big-endian.  Payload symbols
// are one byte each, value < 2^m.
//
// Key record ('K'):
//   magic[4] type u8 version u8 m u8 user u16 server u16 n_symbols u32
//   payload[n_symbols]
//
// Message ('M') and share ('S') records have byte-identical headers except
// for the type byte:
//   magic[4] type u8 version u8 m u8 user u16 server u16
//   threshold u8 privacy u8 servers u8 n_symbols u32
//   plaintext_len u64 pad_count u16 payload[n_symbols]
//
// plaintext_len is the original bit length of the stored file; 0 marks a
// raw symbol payload (no bit-packing semantics).

inline constexpr char kMagic[4] = {'P', 'F', 'S', '1'};
inline constexpr std::uint8_t kVersion = 1;

enum class RecordType : std::uint8_t {
  key = 'K',
  message = 'M',
  share = 'S',
};

struct KeyRecord {
  unsigned m = 0;
  std::uint16_t user_id = 0;
  std::uint16_t server_id = 0;
  std::vector<Symbol> symbols;
};

// Header shared by message and share records.
struct RecordMeta {
  unsigned m = 0;
  std::uint16_t user_id = 0;
  std::uint16_t server_id = 0;
  std::uint8_t threshold = 0;  // t
  std::uint8_t privacy = 0;    // z
  std::uint8_t servers = 0;    // L
  std::uint32_t n_symbols = 0;
  std::uint64_t plaintext_len = 0;
  std::uint16_t pad_count = 0;

  bool same_object(const RecordMeta& other) const;  // equal ignoring server_id

  bool operator==(const RecordMeta& other) const = default;
};

struct PayloadRecord {
  RecordType type = RecordType::message;
  RecordMeta meta;
  std::vector<Symbol> payload;
};

void write_key_record(std::ostream& out, const KeyRecord& record);
KeyRecord read_key_record(std::istream& in);

void write_payload_record(std::ostream& out, RecordType type,
                          const RecordMeta& meta,
                          std::span<const Symbol> payload);
// Throws Error(format) if the record's type byte differs from `expect`.
PayloadRecord read_payload_record(std::istream& in,
                                  std::optional<RecordType> expect);

// Path-based conveniences; open/produce the whole file, throw Error(io) with
// the path on filesystem errors and Error(format) with the byte offset on
// malformed content.
void save_key_file(const std::string& path, const KeyRecord& record);
KeyRecord load_key_file(const std::string& path);
void save_payload_file(const std::string& path, RecordType type,
                       const RecordMeta& meta, std::span<const Symbol> payload);
PayloadRecord load_payload_file(const std::string& path,
                                std::optional<RecordType> expect);

// Bit packing between byte strings and m-bit symbols, MSB first: bit j of
// the stream is bit 7-(j mod 8) of byte j/8, and symbol k holds stream bits
// [k*m, (k+1)*m).  Trailing stream bits beyond the last full byte are zero.
std::vector<Symbol> bytes_to_symbols(std::span<const std::uint8_t> bytes, unsigned m);
std::vector<std::uint8_t> symbols_to_bytes(std::span<const Symbol> symbols,
                                           unsigned m, std::size_t byte_len);

}  // namespace pfs::wire

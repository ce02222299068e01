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

#include "pfs/serialize.hpp"

#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "pfs/errors.hpp"

namespace pfs::wire {

namespace {

// Big-endian primitive writers.
void put_u8(std::ostream& out, std::uint8_t v) {
  out.put(static_cast<char>(v));
}
void put_u16(std::ostream& out, std::uint16_t v) {
  put_u8(out, static_cast<std::uint8_t>(v >> 8));
  put_u8(out, static_cast<std::uint8_t>(v));
}
void put_u32(std::ostream& out, std::uint32_t v) {
  put_u16(out, static_cast<std::uint16_t>(v >> 16));
  put_u16(out, static_cast<std::uint16_t>(v));
}
void put_u64(std::ostream& out, std::uint64_t v) {
  put_u32(out, static_cast<std::uint32_t>(v >> 32));
  put_u32(out, static_cast<std::uint32_t>(v));
}

// Reader that tracks its offset so format errors can name the exact byte.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::size_t offset() const { return offset_; }

  std::uint8_t u8(const char* what) {
    char c;
    if (!in_.get(c)) {
      fail(ErrorCode::format, std::string("truncated record: expected ") + what +
                                  " at offset " + std::to_string(offset_));
    }
    ++offset_;
    return static_cast<std::uint8_t>(c);
  }
  std::uint16_t u16(const char* what) {
    const std::uint16_t hi = u8(what);
    return static_cast<std::uint16_t>((hi << 8) | u8(what));
  }
  std::uint32_t u32(const char* what) {
    const std::uint32_t hi = u16(what);
    return (hi << 16) | u16(what);
  }
  std::uint64_t u64(const char* what) {
    const std::uint64_t hi = u32(what);
    return (hi << 32) | u32(what);
  }

  void bytes(std::uint8_t* out, std::size_t count, const char* what) {
    in_.read(reinterpret_cast<char*>(out), static_cast<std::streamsize>(count));
    if (static_cast<std::size_t>(in_.gcount()) != count) {
      fail(ErrorCode::format,
           std::string("truncated record: expected ") + std::to_string(count) +
               " bytes of " + what + " at offset " + std::to_string(offset_));
    }
    offset_ += count;
  }

  void expect_end() {
    if (in_.peek() != std::char_traits<char>::eof()) {
      fail(ErrorCode::format, "trailing bytes after record at offset " +
                                  std::to_string(offset_));
    }
  }

 private:
  std::istream& in_;
  std::size_t offset_ = 0;
};

void read_preamble(Reader& r, RecordType expected_or_any,
                   bool any, RecordType* actual) {
  char magic[4];
  for (int i = 0; i < 4; ++i) {
    magic[i] = static_cast<char>(r.u8("magic"));
  }
  if (std::memcmp(magic, kMagic, 4) != 0) {
    fail(ErrorCode::format, "bad magic: not a PFS1 record (offset 0)");
  }
  const std::uint8_t type = r.u8("record type");
  if (type != static_cast<std::uint8_t>(RecordType::key) &&
      type != static_cast<std::uint8_t>(RecordType::message) &&
      type != static_cast<std::uint8_t>(RecordType::share)) {
    fail(ErrorCode::format,
         "unknown record type byte " + std::to_string(type) + " at offset 4");
  }
  *actual = static_cast<RecordType>(type);
  if (!any && *actual != expected_or_any) {
    fail(ErrorCode::format,
         std::string("record type mismatch at offset 4: expected '") +
             static_cast<char>(expected_or_any) + "', found '" +
             static_cast<char>(type) + "'");
  }
  const std::uint8_t version = r.u8("version");
  if (version != kVersion) {
    fail(ErrorCode::format, "unsupported format version " +
                                std::to_string(version) + " at offset 5");
  }
}

unsigned read_symbol_width(Reader& r) {
  const std::uint8_t m = r.u8("field width");
  if (m < 1 || m > 8) {
    fail(ErrorCode::format, "field width " + std::to_string(m) +
                                " out of range at offset " +
                                std::to_string(r.offset() - 1));
  }
  return m;
}

std::vector<Symbol> read_payload(Reader& r, std::uint32_t n, unsigned m) {
  std::vector<Symbol> payload(n);
  if (n > 0) {
    const std::size_t at = r.offset();
    r.bytes(payload.data(), n, "payload symbols");
    const unsigned q = 1u << m;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (payload[i] >= q) {
        fail(ErrorCode::format,
             "payload symbol " + std::to_string(payload[i]) +
                 " outside GF(2^" + std::to_string(m) + ") at offset " +
                 std::to_string(at + i));
      }
    }
  }
  return payload;
}

}  // namespace

bool RecordMeta::same_object(const RecordMeta& other) const {
  return m == other.m && user_id == other.user_id &&
         threshold == other.threshold && privacy == other.privacy &&
         servers == other.servers && n_symbols == other.n_symbols &&
         plaintext_len == other.plaintext_len && pad_count == other.pad_count;
}

void write_key_record(std::ostream& out, const KeyRecord& record) {
  out.write(kMagic, 4);
  put_u8(out, static_cast<std::uint8_t>(RecordType::key));
  put_u8(out, kVersion);
  put_u8(out, static_cast<std::uint8_t>(record.m));
  put_u16(out, record.user_id);
  put_u16(out, record.server_id);
  put_u32(out, static_cast<std::uint32_t>(record.symbols.size()));
  out.write(reinterpret_cast<const char*>(record.symbols.data()),
            static_cast<std::streamsize>(record.symbols.size()));
}

KeyRecord read_key_record(std::istream& in) {
  Reader r(in);
  RecordType actual;
  read_preamble(r, RecordType::key, false, &actual);
  KeyRecord record;
  record.m = read_symbol_width(r);
  record.user_id = r.u16("user id");
  record.server_id = r.u16("server id");
  const std::uint32_t n = r.u32("symbol count");
  record.symbols = read_payload(r, n, record.m);
  r.expect_end();
  return record;
}

void write_payload_record(std::ostream& out, RecordType type,
                          const RecordMeta& meta,
                          std::span<const Symbol> payload) {
  if (type == RecordType::key) {
    fail(ErrorCode::usage, "key records have their own writer");
  }
  if (payload.size() != meta.n_symbols) {
    fail(ErrorCode::usage, "payload length disagrees with header n_symbols");
  }
  out.write(kMagic, 4);
  put_u8(out, static_cast<std::uint8_t>(type));
  put_u8(out, kVersion);
  put_u8(out, static_cast<std::uint8_t>(meta.m));
  put_u16(out, meta.user_id);
  put_u16(out, meta.server_id);
  put_u8(out, meta.threshold);
  put_u8(out, meta.privacy);
  put_u8(out, meta.servers);
  put_u32(out, meta.n_symbols);
  put_u64(out, meta.plaintext_len);
  put_u16(out, meta.pad_count);
  out.write(reinterpret_cast<const char*>(payload.data()),
            static_cast<std::streamsize>(payload.size()));
}

PayloadRecord read_payload_record(std::istream& in,
                                  std::optional<RecordType> expect) {
  Reader r(in);
  PayloadRecord record;
  read_preamble(r, expect.value_or(RecordType::message), !expect.has_value(),
                &record.type);
  if (record.type == RecordType::key) {
    fail(ErrorCode::format, "expected a message or share record, found a key");
  }
  record.meta.m = read_symbol_width(r);
  record.meta.user_id = r.u16("user id");
  record.meta.server_id = r.u16("server id");
  record.meta.threshold = r.u8("threshold");
  record.meta.privacy = r.u8("privacy");
  record.meta.servers = r.u8("server count");
  record.meta.n_symbols = r.u32("symbol count");
  record.meta.plaintext_len = r.u64("plaintext length");
  record.meta.pad_count = r.u16("pad count");
  record.payload = read_payload(r, record.meta.n_symbols, record.meta.m);
  r.expect_end();
  return record;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    fail(ErrorCode::io, "cannot open '" + path + "' for writing");
  }
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorCode::io, "cannot open '" + path + "' for reading");
  }
  return in;
}

void check_write(std::ostream& out, const std::string& path) {
  out.flush();
  if (!out) {
    fail(ErrorCode::io, "write to '" + path + "' failed");
  }
}

}  // namespace

void save_key_file(const std::string& path, const KeyRecord& record) {
  std::ofstream out = open_out(path);
  write_key_record(out, record);
  check_write(out, path);
}

KeyRecord load_key_file(const std::string& path) {
  std::ifstream in = open_in(path);
  try {
    return read_key_record(in);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::format) {
      fail(ErrorCode::format, std::string(e.what()) + " in '" + path + "'");
    }
    throw;
  }
}

void save_payload_file(const std::string& path, RecordType type,
                       const RecordMeta& meta, std::span<const Symbol> payload) {
  std::ofstream out = open_out(path);
  write_payload_record(out, type, meta, payload);
  check_write(out, path);
}

PayloadRecord load_payload_file(const std::string& path,
                                std::optional<RecordType> expect) {
  std::ifstream in = open_in(path);
  try {
    return read_payload_record(in, expect);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::format) {
      fail(ErrorCode::format, std::string(e.what()) + " in '" + path + "'");
    }
    throw;
  }
}

std::vector<Symbol> bytes_to_symbols(std::span<const std::uint8_t> bytes,
                                     unsigned m) {
  if (m < 1 || m > 8) {
    fail(ErrorCode::parameter, "field width m must be in [1, 8]");
  }
  const std::size_t total_bits = bytes.size() * 8;
  const std::size_t count = (total_bits + m - 1) / m;
  std::vector<Symbol> symbols(count, 0);
  for (std::size_t j = 0; j < total_bits; ++j) {
    const unsigned bit = (bytes[j >> 3] >> (7 - (j & 7))) & 1u;
    if (bit) {
      const std::size_t k = j / m;
      const unsigned pos = static_cast<unsigned>(j % m);
      symbols[k] |= static_cast<Symbol>(bit << (m - 1 - pos));
    }
  }
  return symbols;
}

std::vector<std::uint8_t> symbols_to_bytes(std::span<const Symbol> symbols,
                                           unsigned m, std::size_t byte_len) {
  if (m < 1 || m > 8) {
    fail(ErrorCode::parameter, "field width m must be in [1, 8]");
  }
  if (byte_len * 8 > symbols.size() * static_cast<std::size_t>(m)) {
    fail(ErrorCode::usage, "not enough symbols to unpack " +
                               std::to_string(byte_len) + " bytes");
  }
  std::vector<std::uint8_t> bytes(byte_len, 0);
  for (std::size_t j = 0; j < byte_len * 8; ++j) {
    const std::size_t k = j / m;
    const unsigned pos = static_cast<unsigned>(j % m);
    const unsigned bit = (symbols[k] >> (m - 1 - pos)) & 1u;
    if (bit) {
      bytes[j >> 3] |= static_cast<std::uint8_t>(bit << (7 - (j & 7)));
    }
  }
  return bytes;
}

}  // namespace pfs::wire

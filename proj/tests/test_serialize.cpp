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

#include <cstdint>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "pfs/errors.hpp"
#include "test_util.hpp"

using pfs::ErrorCode;
using pfs::Symbol;
namespace wire = pfs::wire;

namespace {

std::string serialized_key(const wire::KeyRecord& record) {
  std::ostringstream out;
  wire::write_key_record(out, record);
  return out.str();
}

wire::RecordMeta sample_meta() {
  wire::RecordMeta meta;
  meta.m = 2;
  meta.user_id = 1;
  meta.server_id = 2;
  meta.threshold = 2;
  meta.privacy = 1;
  meta.servers = 3;
  meta.n_symbols = 2;
  meta.plaintext_len = 3;
  meta.pad_count = 1;
  return meta;
}

std::string serialized_payload(wire::RecordType type) {
  std::ostringstream out;
  wire::write_payload_record(out, type, sample_meta(),
                             std::vector<Symbol>{1, 0});
  return out.str();
}

}  // namespace

TEST_CASE("key records serialize to the documented byte layout") {
  wire::KeyRecord record;
  record.m = 2;
  record.user_id = 1;
  record.server_id = 3;
  record.symbols = {0, 3};

  const std::string bytes = serialized_key(record);
  const unsigned char expected[] = {0x50, 0x46, 0x53, 0x31, 0x4B, 0x01,
                                    0x02, 0x00, 0x01, 0x00, 0x03, 0x00,
                                    0x00, 0x00, 0x02, 0x00, 0x03};
  REQUIRE(bytes.size() == sizeof(expected));
  for (std::size_t i = 0; i < sizeof(expected); ++i) {
    CHECK(static_cast<unsigned char>(bytes[i]) == expected[i]);
  }

  std::istringstream in(bytes);
  const wire::KeyRecord back = wire::read_key_record(in);
  CHECK(back.m == 2);
  CHECK(back.user_id == 1);
  CHECK(back.server_id == 3);
  CHECK(back.symbols == std::vector<Symbol>{0, 3});
}

TEST_CASE("message and share records differ only in the type byte") {
  const std::string msg = serialized_payload(wire::RecordType::message);
  const std::string shr = serialized_payload(wire::RecordType::share);
  REQUIRE(msg.size() == shr.size());
  CHECK(static_cast<unsigned char>(msg[4]) == 'M');
  CHECK(static_cast<unsigned char>(shr[4]) == 'S');
  for (std::size_t i = 0; i < msg.size(); ++i) {
    if (i == 4) continue;
    CHECK(msg[i] == shr[i]);
  }

  std::istringstream in(msg);
  const wire::PayloadRecord back =
      wire::read_payload_record(in, wire::RecordType::message);
  CHECK(back.type == wire::RecordType::message);
  CHECK(back.meta == sample_meta());
  CHECK(back.payload == std::vector<Symbol>{1, 0});
}

TEST_CASE("same_object ignores the server id only") {
  wire::RecordMeta a = sample_meta();
  wire::RecordMeta b = sample_meta();
  b.server_id = 7;
  CHECK(a.same_object(b));
  b.threshold = 3;
  CHECK_FALSE(a.same_object(b));
}

TEST_CASE("malformed records are rejected") {
  const std::string good = serialized_payload(wire::RecordType::message);

  SUBCASE("truncated stream") {
    std::istringstream in(good.substr(0, 10));
    expect_error(ErrorCode::format, [&] {
      (void)wire::read_payload_record(in, wire::RecordType::message);
    });
  }
  SUBCASE("wrong magic") {
    std::string bad = good;
    bad[0] = 'Q';
    std::istringstream in(bad);
    expect_error(ErrorCode::format, [&] {
      (void)wire::read_payload_record(in, wire::RecordType::message);
    });
  }
  SUBCASE("unsupported version") {
    std::string bad = good;
    bad[5] = 2;
    std::istringstream in(bad);
    expect_error(ErrorCode::format, [&] {
      (void)wire::read_payload_record(in, wire::RecordType::message);
    });
  }
  SUBCASE("unexpected record type") {
    std::istringstream in(good);
    expect_error(ErrorCode::format, [&] {
      (void)wire::read_payload_record(in, wire::RecordType::share);
    });
  }
  SUBCASE("payload symbol outside the field") {
    std::string bad = good;
    bad[bad.size() - 2] = 0x05;  // first payload symbol of an m=2 record
    std::istringstream in(bad);
    expect_error(ErrorCode::format, [&] {
      (void)wire::read_payload_record(in, wire::RecordType::message);
    });
  }
}

TEST_CASE("file helpers roundtrip and surface io errors") {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "pfs_serialize_test";
  std::filesystem::create_directories(dir);

  wire::KeyRecord record;
  record.m = 3;
  record.user_id = 9;
  record.server_id = 1;
  record.symbols = {7, 0, 5};
  const std::string key_path = (dir / "roundtrip.key").string();
  wire::save_key_file(key_path, record);
  const wire::KeyRecord back = wire::load_key_file(key_path);
  CHECK(back.symbols == record.symbols);

  const std::string payload_path = (dir / "roundtrip.msg").string();
  wire::save_payload_file(payload_path, wire::RecordType::message,
                          sample_meta(), std::vector<Symbol>{1, 0});
  const wire::PayloadRecord payload =
      wire::load_payload_file(payload_path, wire::RecordType::message);
  CHECK(payload.payload == std::vector<Symbol>{1, 0});

  expect_error(ErrorCode::io, [&] {
    (void)wire::load_key_file((dir / "missing.key").string());
  });
  std::filesystem::remove_all(dir);
}

TEST_CASE("bit packing is MSB-first with zero padding") {
  const std::vector<std::uint8_t> nibbles = {0xAB, 0xCD};
  CHECK(wire::bytes_to_symbols(nibbles, 4) ==
        std::vector<Symbol>{0xA, 0xB, 0xC, 0xD});
  CHECK(wire::symbols_to_bytes(std::vector<Symbol>{0xA, 0xB, 0xC, 0xD}, 4, 2) ==
        nibbles);

  const std::vector<std::uint8_t> one = {0xB4};
  CHECK(wire::bytes_to_symbols(one, 1) ==
        std::vector<Symbol>{1, 0, 1, 1, 0, 1, 0, 0});

  // m=3 does not divide 8: the last symbol is padded with zero bits.
  CHECK(wire::bytes_to_symbols(one, 3) == std::vector<Symbol>{5, 5, 0});
  CHECK(wire::symbols_to_bytes(std::vector<Symbol>{5, 5, 0}, 3, 1) == one);
}

TEST_CASE("bit packing roundtrips random data for every symbol width") {
  std::mt19937 gen(4242);
  std::uniform_int_distribution<int> byte(0, 255);
  for (unsigned m = 1; m <= 8; ++m) {
    std::vector<std::uint8_t> data(37);
    for (auto& b : data) b = static_cast<std::uint8_t>(byte(gen));
    const std::vector<Symbol> symbols = wire::bytes_to_symbols(data, m);
    CHECK(symbols.size() == (data.size() * 8 + m - 1) / m);
    CHECK(wire::symbols_to_bytes(symbols, m, data.size()) == data);
  }
}

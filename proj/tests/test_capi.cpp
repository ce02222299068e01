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

// Exercises the shared library through its C surface alone: this file
// includes pfs.h and links libpfs, never the C++ core.

#include "pfs.h"

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct TempDir {
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path path;
};

// Owns a char* produced by the library and frees it via the library.
struct OwnedString {
  char* str = nullptr;
  ~OwnedString() { pfs_string_free(str); }
  std::string value() const { return str == nullptr ? std::string() : str; }
};

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::vector<std::uint8_t>((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
}

void write_file(const fs::path& path, const std::vector<std::uint8_t>& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  REQUIRE(out.good());
}

constexpr const char kTinyParams[] = R"({
  "field_m": 2, "servers": 3,
  "users": [{"user_id": 1, "threshold": 2, "privacy": 1, "n_symbols": 1}]
})";

}  // namespace

TEST_CASE("status names and version strings are stable") {
  CHECK(std::strcmp(pfs_status_name(PFS_OK), "ok") == 0);
  CHECK(std::strcmp(pfs_status_name(PFS_ERR_VALIDATION), "validation-error") == 0);
  CHECK(std::strcmp(pfs_status_name(PFS_ERR_CAPACITY), "capacity-error") == 0);
  CHECK(std::strcmp(pfs_status_name(PFS_ERR_KEY_REUSE), "key-reuse") == 0);
  CHECK(std::strcmp(pfs_status_name(PFS_ERR_AUDIT), "audit-failure") == 0);
  CHECK(std::strcmp(pfs_status_name(PFS_ERR_IO), "io-error") == 0);
  CHECK(pfs_version() != nullptr);
  CHECK(pfs_last_error() != nullptr);  // never null, possibly empty
}

TEST_CASE("field handles expose exact GF(2^m) arithmetic") {
  pfs_field* field = nullptr;
  REQUIRE(pfs_field_create(2, 0, &field) == PFS_OK);
  CHECK(pfs_field_order(field) == 4);

  unsigned out = 99;
  CHECK(pfs_field_add(field, 1, 3, &out) == PFS_OK);
  CHECK(out == 2);
  CHECK(pfs_field_mul(field, 2, 2, &out) == PFS_OK);
  CHECK(out == 3);
  CHECK(pfs_field_inv(field, 2, &out) == PFS_OK);
  CHECK(out == 3);

  CHECK(pfs_field_add(field, 4, 0, &out) == PFS_ERR_VALIDATION);
  CHECK(pfs_field_inv(field, 0, &out) == PFS_ERR_VALIDATION);
  CHECK(std::strlen(pfs_last_error()) > 0);
  pfs_field_destroy(field);

  pfs_field* bad = nullptr;
  CHECK(pfs_field_create(0, 0, &bad) == PFS_ERR_VALIDATION);
  CHECK(bad == nullptr);
  CHECK(pfs_field_create(2, 0x5, &bad) == PFS_ERR_VALIDATION);  // reducible
  CHECK(pfs_field_create(2, 0, nullptr) == PFS_ERR_VALIDATION);
}

TEST_CASE("key ring handles are one-shot per server") {
  pfs_field* field = nullptr;
  REQUIRE(pfs_field_create(4, 0, &field) == PFS_OK);
  pfs_keyring* ring = nullptr;
  REQUIRE(pfs_keyring_generate(field, 1, 3, 8, 1, 2026, &ring) == PFS_OK);
  CHECK(pfs_keyring_symbols(ring) == 8);

  std::vector<std::uint8_t> key(8, 0xFF);
  CHECK(pfs_keyring_consume(ring, 1, key.data(), key.size()) == PFS_OK);
  for (std::uint8_t s : key) CHECK(s < 16);
  CHECK(pfs_keyring_consume(ring, 1, key.data(), key.size()) ==
        PFS_ERR_KEY_REUSE);

  std::uint8_t tiny[2];
  CHECK(pfs_keyring_consume(ring, 2, tiny, sizeof(tiny)) ==
        PFS_ERR_VALIDATION);
  // The failed call must not have consumed the key.
  CHECK(pfs_keyring_consume(ring, 2, key.data(), key.size()) == PFS_OK);
  CHECK(pfs_keyring_consume(ring, 0, key.data(), key.size()) ==
        PFS_ERR_VALIDATION);

  pfs_keyring_destroy(ring);
  pfs_field_destroy(field);
}

TEST_CASE("keygen, store, ingest and reconstruct through the filesystem") {
  TempDir dir("pfs_capi_files");
  const fs::path keys = dir.path / "keys";
  const fs::path msgs = dir.path / "msgs";
  const fs::path shares = dir.path / "shares";
  fs::create_directories(shares);

  // GF(256), L=5, t=3, z=1, n=32: capacity 64 symbols = 64 bytes.
  REQUIRE(pfs_keygen(keys.string().c_str(), 8, 1, 5, 32, 1, 7) == PFS_OK);
  for (unsigned l = 1; l <= 5; ++l) {
    CHECK(fs::exists(keys / ("u1_s" + std::to_string(l) + ".key")));
  }

  std::vector<std::uint8_t> input(64);
  for (std::size_t i = 0; i < input.size(); ++i) {
    input[i] = static_cast<std::uint8_t>(i * 37 + 11);
  }
  const fs::path input_path = dir.path / "input.bin";
  write_file(input_path, input);

  OwnedString report;
  REQUIRE(pfs_store(input_path.string().c_str(), keys.string().c_str(), 1, 3,
                    1, msgs.string().c_str(), 1, 99, &report.str) == PFS_OK);
  const nlohmann::json report_doc = nlohmann::json::parse(report.value());
  CHECK(report_doc["all_achieve_optimum"] == true);

  // The store marked every key consumed; a second run must refuse.
  CHECK(fs::exists(keys / "u1_s1.key.used"));
  CHECK(pfs_store(input_path.string().c_str(), keys.string().c_str(), 1, 3, 1,
                  msgs.string().c_str(), 1, 99, nullptr) == PFS_ERR_KEY_REUSE);

  std::vector<std::string> share_paths;
  for (unsigned l = 1; l <= 5; ++l) {
    const std::string msg =
        (msgs / ("u1_s" + std::to_string(l) + ".msg")).string();
    const std::string key =
        (keys / ("u1_s" + std::to_string(l) + ".key")).string();
    const std::string share =
        (shares / ("u1_s" + std::to_string(l) + ".share")).string();
    REQUIRE(pfs_ingest(msg.c_str(), key.c_str(), share.c_str()) == PFS_OK);
    share_paths.push_back(share);
  }

  // Mismatched key and message are refused.
  CHECK(pfs_ingest((msgs / "u1_s1.msg").string().c_str(),
                   (keys / "u1_s2.key").string().c_str(),
                   (shares / "bogus.share").string().c_str()) ==
        PFS_ERR_VALIDATION);

  SUBCASE("any t shares rebuild the file byte for byte") {
    const fs::path out = dir.path / "out.bin";
    const char* chosen[] = {share_paths[1].c_str(), share_paths[3].c_str(),
                            share_paths[4].c_str()};
    OwnedString summary;
    REQUIRE(pfs_reconstruct(chosen, 3, out.string().c_str(), &summary.str) ==
            PFS_OK);
    CHECK(read_file(out) == input);
    const nlohmann::json doc = nlohmann::json::parse(summary.value());
    CHECK(doc["plaintext_bits"] == 512);
    CHECK(doc["payload"] == "bits");
    CHECK(doc["user_id"] == 1);
  }
  SUBCASE("fewer than t shares cannot reconstruct") {
    const fs::path out = dir.path / "out.bin";
    const char* chosen[] = {share_paths[0].c_str(), share_paths[1].c_str()};
    CHECK(pfs_reconstruct(chosen, 2, out.string().c_str(), nullptr) ==
          PFS_ERR_CAPACITY);
  }
  SUBCASE("a damaged share file is an io error") {
    std::vector<std::uint8_t> bytes = read_file(share_paths[0]);
    bytes[0] ^= 0xFF;  // breaks the magic
    write_file(share_paths[0], bytes);
    const fs::path out = dir.path / "out.bin";
    const char* chosen[] = {share_paths[0].c_str(), share_paths[1].c_str(),
                            share_paths[2].c_str()};
    CHECK(pfs_reconstruct(chosen, 3, out.string().c_str(), nullptr) ==
          PFS_ERR_IO);
  }
  SUBCASE("an inconsistent extra share is an io error") {
    std::vector<std::uint8_t> bytes = read_file(share_paths[0]);
    bytes.back() ^= 0x01;  // flips a payload symbol, record stays well-formed
    write_file(share_paths[0], bytes);
    const fs::path out = dir.path / "out.bin";
    const char* chosen[] = {share_paths[0].c_str(), share_paths[1].c_str(),
                            share_paths[2].c_str(), share_paths[3].c_str()};
    CHECK(pfs_reconstruct(chosen, 4, out.string().c_str(), nullptr) ==
          PFS_ERR_IO);
  }
}

TEST_CASE("the audit entry point reports breaks without failing the call") {
  OwnedString report;
  int passed = -1;
  REQUIRE(pfs_audit(kTinyParams, "none", &report.str, &passed) == PFS_OK);
  CHECK(passed == 1);
  const nlohmann::json doc = nlohmann::json::parse(report.value());
  CHECK(doc["pass"] == true);
  CHECK(doc["atoms"] == 1024);

  OwnedString broken;
  REQUIRE(pfs_audit(kTinyParams, "no-otp", &broken.str, &passed) == PFS_OK);
  CHECK(passed == 0);
  CHECK(nlohmann::json::parse(broken.value())["pass"] == false);

  REQUIRE(pfs_audit(kTinyParams, "asym", nullptr, &passed) == PFS_OK);
  CHECK(passed == 0);

  CHECK(pfs_audit(kTinyParams, "everything", nullptr, &passed) ==
        PFS_ERR_VALIDATION);
  CHECK(pfs_audit("not json", "none", nullptr, &passed) == PFS_ERR_VALIDATION);
  CHECK(pfs_audit(nullptr, "none", nullptr, &passed) == PFS_ERR_VALIDATION);

  // A deployment too large to enumerate is refused loudly.
  const char* big = R"({"field_m": 8, "servers": 5,
    "users": [{"user_id":1, "threshold":3, "privacy":1, "n_symbols":1024}]})";
  CHECK(pfs_audit(big, "none", nullptr, &passed) == PFS_ERR_VALIDATION);
}

TEST_CASE("the bounds entry point serves optima and frontier tables") {
  OwnedString optima;
  REQUIRE(pfs_bounds(kTinyParams, &optima.str) == PFS_OK);
  const nlohmann::json table = nlohmann::json::parse(optima.value());
  CHECK(table["storage_bits_per_server"] == 2);
  CHECK(table["users"][0]["file_bits"] == 2);

  OwnedString frontier;
  const char* request = R"({"frontier": {"field_m": 4, "servers": 4,
                            "n_symbols": 6}})";
  REQUIRE(pfs_bounds(request, &frontier.str) == PFS_OK);
  CHECK(nlohmann::json::parse(frontier.value())["frontier"].size() == 6);

  CHECK(pfs_bounds("{}", &optima.str) == PFS_ERR_VALIDATION);
  CHECK(pfs_bounds(kTinyParams, nullptr) == PFS_ERR_VALIDATION);
}

TEST_CASE("the demo entry point runs the builtin scenario end to end") {
  TempDir dir("pfs_capi_demo");
  OwnedString summary;
  REQUIRE(pfs_demo(nullptr, (dir.path / "out").string().c_str(),
                   &summary.str) == PFS_OK);
  const nlohmann::json doc = nlohmann::json::parse(summary.value());
  CHECK(doc["ok"] == true);

  CHECK(pfs_demo((dir.path / "missing.json").string().c_str(),
                 (dir.path / "out2").string().c_str(),
                 nullptr) == PFS_ERR_IO);
  CHECK(pfs_demo(nullptr, nullptr, nullptr) == PFS_ERR_VALIDATION);
}

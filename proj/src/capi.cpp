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

#include "pfs.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pfs/audit.hpp"
#include "pfs/bounds.hpp"
#include "pfs/errors.hpp"
#include "pfs/field.hpp"
#include "pfs/keys.hpp"
#include "pfs/protocol.hpp"
#include "pfs/ramp.hpp"
#include "pfs/rng.hpp"
#include "pfs/serialize.hpp"
#include "pfs/simnet.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

struct pfs_field {
  pfs::FieldSpec spec;
};

struct pfs_keyring {
  pfs::KeyRing ring;
};

namespace {

constexpr const char kVersionString[] = "1.0.0";

thread_local std::string g_last_error;

pfs_status status_of(pfs::ErrorCode code) {
  using pfs::ErrorCode;
  switch (code) {
    case ErrorCode::usage:
    case ErrorCode::domain:
    case ErrorCode::rank:
    case ErrorCode::parameter:
    case ErrorCode::scale:
      return PFS_ERR_VALIDATION;
    case ErrorCode::capacity:
    case ErrorCode::insufficient_shares:
      return PFS_ERR_CAPACITY;
    case ErrorCode::key_reuse:
      return PFS_ERR_KEY_REUSE;
    case ErrorCode::audit_failure:
      return PFS_ERR_AUDIT;
    case ErrorCode::io:
    case ErrorCode::format:
    case ErrorCode::corruption:
      return PFS_ERR_IO;
    case ErrorCode::internal:
      return PFS_ERR_INTERNAL;
  }
  return PFS_ERR_INTERNAL;
}

template <typename Fn>
pfs_status guarded(Fn&& fn) {
  try {
    fn();
    return PFS_OK;
  } catch (const pfs::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PFS_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return PFS_ERR_INTERNAL;
  }
}

pfs_status validation_failure(const char* message) {
  g_last_error = message;
  return PFS_ERR_VALIDATION;
}

void set_out_string(char** out, const std::string& text) {
  if (out == nullptr) return;
  char* copy = static_cast<char*>(std::malloc(text.size() + 1));
  if (copy != nullptr) std::memcpy(copy, text.c_str(), text.size() + 1);
  *out = copy;
}

pfs::SymbolRng make_rng(int has_seed, uint64_t seed, uint64_t stream) {
  return has_seed != 0 ? pfs::SymbolRng::seeded(seed, stream)
                       : pfs::SymbolRng::system_entropy();
}

// Keystream domains, kept distinct so reusing one --seed across keygen and
// store never correlates keys with the encoding tape.
constexpr uint64_t kStreamKeygen = 0;
constexpr uint64_t kStreamTape = 1;

pfs::Symbol checked_symbol(const pfs::FieldSpec& spec, unsigned v) {
  if (v >= spec.order()) {
    pfs::fail(pfs::ErrorCode::domain,
              std::to_string(v) + " is not a symbol of GF(2^" +
                  std::to_string(spec.m()) + ")");
  }
  return static_cast<pfs::Symbol>(v);
}

std::string key_file_name(uint16_t user_id, unsigned server_id) {
  return "u" + std::to_string(user_id) + "_s" + std::to_string(server_id) +
         ".key";
}

std::string message_file_name(uint16_t user_id, unsigned server_id) {
  return "u" + std::to_string(user_id) + "_s" + std::to_string(server_id) +
         ".msg";
}

pfs::StorageParams params_from_json(const json& doc) {
  pfs::StorageParams params;
  try {
    params.field = &pfs::FieldSpec::get(doc.at("field_m").get<unsigned>());
    params.servers = doc.at("servers").get<unsigned>();
    for (const json& entry : doc.at("users")) {
      pfs::UserParams u;
      u.user_id = entry.at("user_id").get<uint16_t>();
      u.threshold = entry.at("threshold").get<unsigned>();
      u.privacy = entry.at("privacy").get<unsigned>();
      u.n_symbols = entry.at("n_symbols").get<uint32_t>();
      params.users.push_back(u);
    }
  } catch (const json::exception& e) {
    pfs::fail(pfs::ErrorCode::parameter,
              std::string("parameter JSON is missing fields: ") + e.what());
  }
  params.validate();
  return params;
}

json parse_json(const char* text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    pfs::fail(pfs::ErrorCode::parameter,
              std::string("malformed ") + what + ": " + e.what());
  }
}

std::vector<uint8_t> read_binary_file(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    pfs::fail(pfs::ErrorCode::io, std::string("cannot open '") + path + "'");
  }
  return std::vector<uint8_t>((std::istreambuf_iterator<char>(in)),
                              std::istreambuf_iterator<char>());
}

void write_binary_file(const char* path, const std::vector<uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    pfs::fail(pfs::ErrorCode::io, std::string("cannot write '") + path + "'");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) {
    pfs::fail(pfs::ErrorCode::io, std::string("write to '") + path + "' failed");
  }
}

void ensure_directory(const char* dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    pfs::fail(pfs::ErrorCode::io,
              std::string("cannot create '") + dir + "': " + ec.message());
  }
}

}  // namespace

extern "C" {

const char* pfs_status_name(pfs_status status) {
  switch (status) {
    case PFS_OK: return "ok";
    case PFS_ERR_INTERNAL: return "internal-error";
    case PFS_ERR_VALIDATION: return "validation-error";
    case PFS_ERR_CAPACITY: return "capacity-error";
    case PFS_ERR_KEY_REUSE: return "key-reuse";
    case PFS_ERR_AUDIT: return "audit-failure";
    case PFS_ERR_IO: return "io-error";
  }
  return "unknown";
}

const char* pfs_last_error(void) { return g_last_error.c_str(); }

const char* pfs_version(void) { return kVersionString; }

void pfs_string_free(char* str) { std::free(str); }

/* ---- field handle ----------------------------------------------------- */

pfs_status pfs_field_create(unsigned m, unsigned reduction_poly,
                            pfs_field** out) {
  if (out == nullptr) return validation_failure("out pointer is null");
  *out = nullptr;
  return guarded([&] {
    const unsigned poly =
        reduction_poly == 0 ? pfs::FieldSpec::default_poly(m) : reduction_poly;
    *out = new pfs_field{pfs::FieldSpec(m, poly)};
  });
}

void pfs_field_destroy(pfs_field* field) { delete field; }

unsigned pfs_field_order(const pfs_field* field) {
  return field == nullptr ? 0 : field->spec.order();
}

pfs_status pfs_field_add(const pfs_field* field, unsigned a, unsigned b,
                         unsigned* out) {
  if (field == nullptr || out == nullptr) {
    return validation_failure("field and out must not be null");
  }
  return guarded([&] {
    *out = field->spec.add(checked_symbol(field->spec, a),
                           checked_symbol(field->spec, b));
  });
}

pfs_status pfs_field_mul(const pfs_field* field, unsigned a, unsigned b,
                         unsigned* out) {
  if (field == nullptr || out == nullptr) {
    return validation_failure("field and out must not be null");
  }
  return guarded([&] {
    *out = field->spec.mul(checked_symbol(field->spec, a),
                           checked_symbol(field->spec, b));
  });
}

pfs_status pfs_field_inv(const pfs_field* field, unsigned a, unsigned* out) {
  if (field == nullptr || out == nullptr) {
    return validation_failure("field and out must not be null");
  }
  return guarded([&] { *out = field->spec.inv(checked_symbol(field->spec, a)); });
}

/* ---- key ring handle --------------------------------------------------- */

pfs_status pfs_keyring_generate(const pfs_field* field, uint16_t user_id,
                                unsigned servers, uint32_t n_symbols,
                                int has_seed, uint64_t seed,
                                pfs_keyring** out) {
  if (field == nullptr || out == nullptr) {
    return validation_failure("field and out must not be null");
  }
  *out = nullptr;
  return guarded([&] {
    pfs::SymbolRng rng = make_rng(has_seed, seed, kStreamKeygen);
    *out = new pfs_keyring{
        pfs::KeyRing::generate(field->spec, user_id, servers, n_symbols, rng)};
  });
}

void pfs_keyring_destroy(pfs_keyring* ring) { delete ring; }

uint32_t pfs_keyring_symbols(const pfs_keyring* ring) {
  return ring == nullptr ? 0 : static_cast<uint32_t>(ring->ring.n_symbols());
}

pfs_status pfs_keyring_consume(pfs_keyring* ring, unsigned server_id,
                               uint8_t* out, size_t capacity) {
  if (ring == nullptr || out == nullptr) {
    return validation_failure("ring and out must not be null");
  }
  return guarded([&] {
    if (capacity < ring->ring.n_symbols()) {
      pfs::fail(pfs::ErrorCode::usage,
                "output buffer holds " + std::to_string(capacity) +
                    " symbols but the key has " +
                    std::to_string(ring->ring.n_symbols()));
    }
    const std::vector<pfs::Symbol> key = ring->ring.consume(server_id);
    std::memcpy(out, key.data(), key.size());
  });
}

/* ---- file-level protocol operations ------------------------------------ */

pfs_status pfs_keygen(const char* out_dir, unsigned m, uint16_t user_id,
                      unsigned servers, uint32_t n_symbols, int has_seed,
                      uint64_t seed) {
  if (out_dir == nullptr) return validation_failure("out_dir must not be null");
  return guarded([&] {
    const pfs::FieldSpec& field = pfs::FieldSpec::get(m);
    pfs::SymbolRng rng = make_rng(has_seed, seed, kStreamKeygen);
    const pfs::KeyRing ring =
        pfs::KeyRing::generate(field, user_id, servers, n_symbols, rng);
    ensure_directory(out_dir);
    for (unsigned l = 1; l <= servers; ++l) {
      pfs::wire::KeyRecord record;
      record.m = m;
      record.user_id = user_id;
      record.server_id = static_cast<uint16_t>(l);
      record.symbols = ring.peek(l);
      pfs::wire::save_key_file(
          (fs::path(out_dir) / key_file_name(user_id, l)).string(), record);
    }
  });
}

pfs_status pfs_store(const char* input_path, const char* key_dir,
                     uint16_t user_id, unsigned threshold, unsigned privacy,
                     const char* out_dir, int has_seed, uint64_t seed,
                     char** report_json) {
  if (input_path == nullptr || key_dir == nullptr || out_dir == nullptr) {
    return validation_failure("input_path, key_dir and out_dir must not be null");
  }
  if (report_json != nullptr) *report_json = nullptr;
  return guarded([&] {
    // Collect this user's key files: u<user>_s1.key, s2, ... contiguous.
    std::vector<fs::path> key_paths;
    for (unsigned l = 1; l <= 255; ++l) {
      fs::path path = fs::path(key_dir) / key_file_name(user_id, l);
      if (!fs::exists(path)) break;
      key_paths.push_back(std::move(path));
    }
    if (key_paths.empty()) {
      pfs::fail(pfs::ErrorCode::io,
                std::string("no key files for user ") + std::to_string(user_id) +
                    " under '" + key_dir + "'");
    }
    for (const fs::path& path : key_paths) {
      if (fs::exists(path.string() + ".used")) {
        pfs::fail(pfs::ErrorCode::key_reuse,
                  "key file '" + path.string() +
                      "' was already consumed (found a .used marker)");
      }
    }

    std::vector<std::vector<pfs::Symbol>> material;
    unsigned m = 0;
    for (std::size_t i = 0; i < key_paths.size(); ++i) {
      pfs::wire::KeyRecord record =
          pfs::wire::load_key_file(key_paths[i].string());
      if (record.user_id != user_id ||
          record.server_id != static_cast<uint16_t>(i + 1)) {
        pfs::fail(pfs::ErrorCode::corruption,
                  "key file '" + key_paths[i].string() +
                      "' does not belong where its name says");
      }
      if (i == 0) {
        m = record.m;
      } else if (record.m != m || record.symbols.size() != material[0].size()) {
        pfs::fail(pfs::ErrorCode::corruption,
                  "key file '" + key_paths[i].string() +
                      "' disagrees with the others in width or length");
      }
      material.push_back(std::move(record.symbols));
    }

    const pfs::FieldSpec& field = pfs::FieldSpec::get(m);
    pfs::StorageParams params;
    params.field = &field;
    params.servers = static_cast<unsigned>(material.size());
    params.users.push_back(pfs::UserParams{
        user_id, threshold, privacy,
        static_cast<uint32_t>(material[0].size())});
    params.validate();

    const std::vector<uint8_t> bytes = read_binary_file(input_path);
    const pfs::FileRecord file =
        pfs::FileRecord::from_bytes(params, user_id, bytes);

    pfs::KeyRing ring =
        pfs::KeyRing::from_material(field, user_id, std::move(material));
    pfs::SymbolRng rng = make_rng(has_seed, seed, kStreamTape);
    const pfs::RampParams ramp = params.ramp_for(params.users[0]);
    const pfs::RandomTape tape = pfs::RandomTape::draw(
        field, ramp.tape_len(file.symbols.size()), rng);

    const pfs::StoreResult result = pfs::store(params, file, ring, tape);

    ensure_directory(out_dir);
    for (unsigned l = 1; l <= params.servers; ++l) {
      const pfs::PublicMessage& message = result.messages[l - 1];
      pfs::wire::save_payload_file(
          (fs::path(out_dir) / message_file_name(user_id, l)).string(),
          pfs::wire::RecordType::message, message.meta, message.payload);
    }

    // Only mark the keys spent once every message is safely on disk.
    for (const fs::path& path : key_paths) {
      std::ofstream marker(path.string() + ".used",
                           std::ios::binary | std::ios::trunc);
      marker << "consumed\n";
      if (!marker) {
        pfs::fail(pfs::ErrorCode::io,
                  "cannot write the .used marker for '" + path.string() + "'");
      }
    }

    if (report_json != nullptr) {
      const pfs::AchievementVerdict verdict = pfs::verify_achievement(
          params, result.report, pfs::compute_optima(params));
      set_out_string(report_json, pfs::achievement_json(verdict));
    }
  });
}

pfs_status pfs_ingest(const char* message_path, const char* key_path,
                      const char* out_path) {
  if (message_path == nullptr || key_path == nullptr || out_path == nullptr) {
    return validation_failure(
        "message_path, key_path and out_path must not be null");
  }
  return guarded([&] {
    const pfs::wire::PayloadRecord record = pfs::wire::load_payload_file(
        message_path, pfs::wire::RecordType::message);
    const pfs::wire::KeyRecord key = pfs::wire::load_key_file(key_path);
    if (key.m != record.meta.m || key.user_id != record.meta.user_id ||
        key.server_id != record.meta.server_id) {
      pfs::fail(pfs::ErrorCode::parameter,
                std::string("key file '") + key_path +
                    "' is not the key for message '" + message_path + "'");
    }
    const pfs::FieldSpec& field = pfs::FieldSpec::get(record.meta.m);
    pfs::PublicMessage message;
    message.meta = record.meta;
    message.payload = record.payload;
    const pfs::StoredShare share =
        pfs::server_ingest(field, message, key.symbols);
    pfs::wire::save_payload_file(out_path, pfs::wire::RecordType::share,
                                 share.meta, share.payload);
  });
}

pfs_status pfs_reconstruct(const char* const* share_paths, size_t count,
                           const char* out_path, char** summary_json) {
  if (share_paths == nullptr || count == 0 || out_path == nullptr) {
    return validation_failure("at least one share file and an out_path are required");
  }
  if (summary_json != nullptr) *summary_json = nullptr;
  return guarded([&] {
    std::vector<pfs::StoredShare> shares;
    for (size_t i = 0; i < count; ++i) {
      if (share_paths[i] == nullptr) {
        pfs::fail(pfs::ErrorCode::usage, "share path " + std::to_string(i) +
                                             " is null");
      }
      const pfs::wire::PayloadRecord record = pfs::wire::load_payload_file(
          share_paths[i], pfs::wire::RecordType::share);
      pfs::StoredShare share;
      share.meta = record.meta;
      share.payload = record.payload;
      shares.push_back(std::move(share));
    }

    const pfs::FileRecord file = pfs::reconstruct(shares);
    const pfs::FieldSpec& field = pfs::FieldSpec::get(shares[0].meta.m);

    std::vector<uint8_t> bytes;
    if (file.plaintext_len > 0) {
      bytes = file.to_bits(field);
    } else {
      bytes.assign(file.symbols.begin(), file.symbols.end());
    }
    write_binary_file(out_path, bytes);

    if (summary_json != nullptr) {
      json servers = json::array();
      for (const pfs::StoredShare& share : shares) {
        servers.push_back(share.meta.server_id);
      }
      const json summary{{"user_id", file.user_id},
                         {"plaintext_bits", file.plaintext_len},
                         {"payload", file.plaintext_len > 0 ? "bits" : "symbols"},
                         {"shares_used", count},
                         {"servers", servers},
                         {"out_path", out_path}};
      set_out_string(summary_json, summary.dump(2));
    }
  });
}

/* ---- audit / bounds / demo --------------------------------------------- */

pfs_status pfs_audit(const char* params_json, const char* break_mode,
                     char** report_json, int* passed) {
  if (params_json == nullptr) {
    return validation_failure("params_json must not be null");
  }
  if (report_json != nullptr) *report_json = nullptr;
  if (passed != nullptr) *passed = 0;
  return guarded([&] {
    const pfs::StorageParams params =
        params_from_json(parse_json(params_json, "parameter JSON"));

    pfs::BreakMode mode = pfs::BreakMode::none;
    if (break_mode != nullptr && std::strcmp(break_mode, "none") != 0) {
      if (std::strcmp(break_mode, "no-otp") == 0) {
        mode = pfs::BreakMode::no_otp;
      } else if (std::strcmp(break_mode, "asym") == 0) {
        mode = pfs::BreakMode::no_pad_server1;
      } else {
        pfs::fail(pfs::ErrorCode::parameter,
                  std::string("unknown break mode '") + break_mode +
                      "' (expected none, no-otp or asym)");
      }
    }

    const pfs::AuditReport report = pfs::run_audit(params, mode);
    if (report_json != nullptr) {
      set_out_string(report_json, pfs::audit_report_json(report));
    }
    if (passed != nullptr) *passed = report.pass ? 1 : 0;
  });
}

pfs_status pfs_bounds(const char* request_json, char** table_json) {
  if (request_json == nullptr || table_json == nullptr) {
    return validation_failure("request_json and table_json must not be null");
  }
  *table_json = nullptr;
  return guarded([&] {
    const json doc = parse_json(request_json, "bounds request");
    if (doc.contains("frontier")) {
      const json& f = doc.at("frontier");
      unsigned m = 0, servers = 0;
      uint32_t n_symbols = 0;
      try {
        m = f.at("field_m").get<unsigned>();
        servers = f.at("servers").get<unsigned>();
        n_symbols = f.at("n_symbols").get<uint32_t>();
      } catch (const json::exception& e) {
        pfs::fail(pfs::ErrorCode::parameter,
                  std::string("frontier request is missing fields: ") + e.what());
      }
      const std::vector<pfs::FrontierRow> rows =
          pfs::capacity_frontier(pfs::FieldSpec::get(m), servers, n_symbols);
      set_out_string(table_json, pfs::frontier_json(rows));
    } else {
      const pfs::StorageParams params = params_from_json(doc);
      set_out_string(table_json, pfs::optima_json(pfs::compute_optima(params)));
    }
  });
}

pfs_status pfs_demo(const char* scenario_path, const char* out_dir,
                    char** summary_json) {
  if (out_dir == nullptr) return validation_failure("out_dir must not be null");
  if (summary_json != nullptr) *summary_json = nullptr;
  return guarded([&] {
    pfs::Scenario scenario;
    if (scenario_path == nullptr) {
      scenario = pfs::Scenario::builtin_default();
    } else {
      std::ifstream in(scenario_path, std::ios::binary);
      if (!in) {
        pfs::fail(pfs::ErrorCode::io,
                  std::string("cannot open '") + scenario_path + "'");
      }
      const std::string text((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
      scenario = pfs::Scenario::from_json_text(text);
    }
    ensure_directory(out_dir);
    const std::string summary = pfs::run_demo(scenario, out_dir);
    set_out_string(summary_json, summary);
  });
}

}  // extern "C"

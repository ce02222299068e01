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

#include "pfs/keys.hpp"

#include <string>

#include "pfs/errors.hpp"

namespace pfs {

KeyRing::KeyRing(const FieldSpec& field, std::uint16_t user_id,
                 std::vector<std::vector<Symbol>> entries)
    : field_(&field),
      user_id_(user_id),
      n_symbols_(entries.empty() ? 0 : entries.front().size()),
      entries_(std::move(entries)),
      consumed_(entries_.size(), false) {}

KeyRing KeyRing::generate(const FieldSpec& field, std::uint16_t user_id,
                          unsigned server_count, std::size_t n_symbols,
                          SymbolRng& rng) {
  if (server_count == 0) {
    fail(ErrorCode::parameter, "key ring needs at least one server");
  }
  if (n_symbols == 0) {
    fail(ErrorCode::parameter, "key length must be positive");
  }
  std::vector<std::vector<Symbol>> entries;
  entries.reserve(server_count);
  for (unsigned l = 0; l < server_count; ++l) {
    entries.push_back(rng.draw(field, n_symbols));
  }
  return KeyRing(field, user_id, std::move(entries));
}

KeyRing KeyRing::from_material(const FieldSpec& field, std::uint16_t user_id,
                               std::vector<std::vector<Symbol>> per_server) {
  if (per_server.empty()) {
    fail(ErrorCode::parameter, "key ring needs at least one server");
  }
  const std::size_t n = per_server.front().size();
  if (n == 0) {
    fail(ErrorCode::parameter, "key length must be positive");
  }
  for (const auto& key : per_server) {
    if (key.size() != n) {
      fail(ErrorCode::parameter, "key vectors must all have equal length");
    }
    for (Symbol s : key) field.check_symbol(s);
  }
  return KeyRing(field, user_id, std::move(per_server));
}

const std::vector<Symbol>& KeyRing::peek(unsigned server_id) const {
  if (server_id < 1 || server_id > entries_.size()) {
    fail(ErrorCode::usage, "no key for server " + std::to_string(server_id) +
                               " in a ring of " + std::to_string(entries_.size()) +
                               " servers");
  }
  return entries_[server_id - 1];
}

std::vector<Symbol> KeyRing::consume(unsigned server_id) {
  const std::vector<Symbol>& key = peek(server_id);  // validates server_id
  if (consumed_[server_id - 1]) {
    fail(ErrorCode::key_reuse,
         "one-time key for user " + std::to_string(user_id_) + ", server " +
             std::to_string(server_id) + " was already consumed");
  }
  consumed_[server_id - 1] = true;
  return key;
}

bool KeyRing::is_consumed(unsigned server_id) const {
  peek(server_id);  // validates server_id
  return consumed_[server_id - 1];
}

void otp_apply_into(const FieldSpec& field, std::span<const Symbol> data,
                    std::span<const Symbol> key, std::span<Symbol> out) {
  if (data.size() != key.size()) {
    fail(ErrorCode::usage, "pad length " + std::to_string(key.size()) +
                               " does not match payload length " +
                               std::to_string(data.size()));
  }
  if (out.size() != data.size()) {
    fail(ErrorCode::usage, "output buffer length mismatch");
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    field.check_symbol(data[i]);
    field.check_symbol(key[i]);
    out[i] = field.add(data[i], key[i]);
  }
}

std::vector<Symbol> otp_apply(const FieldSpec& field,
                              std::span<const Symbol> data,
                              std::span<const Symbol> key) {
  std::vector<Symbol> out(data.size());
  otp_apply_into(field, data, key, out);
  return out;
}

}  // namespace pfs

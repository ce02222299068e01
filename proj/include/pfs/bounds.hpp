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
#include <string>
#include <vector>

#include "pfs/protocol.hpp"

namespace pfs {

// Closed-form optimal resource usage for a deployment where each server
// holds an n_d-symbol key with user d.  With symbol width m bits:
//
//   file capacity      n_d (t_d - z_d) m   bits
//   local randomness   n_d z_d m           bits
//   message to each server   n_d m         bits   (hence L n_d m total)
//   storage at each server   sum_d n_d m   bits
//
// These are simultaneously the converse bounds and what the implemented
// scheme attains, which is exactly what verify_achievement checks.
struct UserOptima {
  std::uint16_t user_id = 0;
  std::uint64_t file_bits = 0;
  std::uint64_t randomness_bits = 0;
  std::uint64_t message_bits_per_server = 0;
  std::uint64_t message_total_bits = 0;
};

struct OptimaTable {
  std::vector<UserOptima> users;
  std::uint64_t storage_bits_per_server = 0;
};

OptimaTable compute_optima(const StorageParams& params);

// One measured-vs-optimal comparison.  `note` carries human context (e.g.
// that a short plaintext was padded up to capacity).
struct BoundCheck {
  std::string quantity;
  std::uint16_t user_id = 0;   // 0 when the quantity is per-server only
  unsigned server_id = 0;      // 0 when not per-server
  std::uint64_t measured = 0;
  std::uint64_t optimal = 0;
  bool achieves = false;       // measured == optimal
  std::string note;
};

struct AchievementVerdict {
  std::vector<BoundCheck> checks;
  bool all_achieve = false;
};

// Compares a measured report against the optima, quantity by quantity.
// Equality is exact; any deviation (e.g. a sabotaged run that drew a
// double-length tape) is flagged with achieves = false.  Storage checks are
// emitted only if the report measured storage.
AchievementVerdict verify_achievement(const StorageParams& params,
                                      const ResourceReport& report,
                                      const OptimaTable& optima);

/// Trade-off table for a fixed per-server key budget of n_symbols: every
// admissible (t, z) with 1 <= z < t <= L, with the file capacity and costs
// that budget buys.
struct FrontierRow {
  unsigned threshold = 0;
  unsigned privacy = 0;
  std::uint64_t file_bits = 0;
  std::uint64_t randomness_bits = 0;
  std::uint64_t message_total_bits = 0;
  std::uint64_t storage_bits_per_server = 0;
};

std::vector<FrontierRow> capacity_frontier(const FieldSpec& field,
                                           unsigned servers,
                                           std::uint32_t n_symbols);

// JSON renderings (strings so no JSON library leaks into this header).
std::string optima_json(const OptimaTable& table);
std::string achievement_json(const AchievementVerdict& verdict);
std::string frontier_json(const std::vector<FrontierRow>& rows);

}  // namespace pfs

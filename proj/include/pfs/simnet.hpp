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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pfs/audit.hpp"
#include "pfs/bounds.hpp"
#include "pfs/protocol.hpp"
#include "pfs/rational.hpp"

namespace pfs {

// In-memory model of one storage server: its per-user key copies and
// whatever shares it has ingested.  Servers only ever see their own key
// material and the messages addressed to them.
struct ServerState {
  unsigned server_id = 0;
  std::map<std::uint16_t, std::vector<Symbol>> keys;     // by user
  std::map<std::uint16_t, StoredShare> shares;           // by user
};

struct AttackOutcome {
  std::vector<unsigned> colluders;
  std::uint16_t target_user = 0;
  std::size_t shares_available = 0;
  bool can_reconstruct = false;                    // |C| >= t
  std::optional<bool> recovered_matches;           // set when reconstruction ran
  Rational file_entropy_bits;                      // H(F) of the target
  std::uint64_t profile_leakage_bits = 0;          // scheme's predicted leak
  // Exact H(F | transcript, colluders' keys and shares), measured by the
  // audit enumeration when the deployment is small enough.
  std::optional<Rational> residual_entropy_bits;
};

// A full deployment simulated in memory: key distribution, user agents,
// servers, and the public channel transcript.  Deterministic for a given
// (params, seed).
class Simulation {
 public:
  // Generates every user's key ring from the seed and hands each server its
  // key copies.  No files are stored yet.
  static Simulation deploy(const StorageParams& params, std::uint64_t seed);

  const StorageParams& params() const { return params_; }
  const std::vector<std::string>& event_log() const { return log_; }
  const std::vector<PublicMessage>& transcript() const { return transcript_; }
  const ServerState& server(unsigned server_id) const;
  const ResourceReport& report() const { return report_; }

  // Stores one file per user (ordered as params.users): runs the protocol,
  // broadcasts the messages, and has each server ingest its own.  Tapes are
  // drawn from the simulation seed.  One-shot, like the key material it
  // consumes: a second call throws Error(key_reuse).
  void run_store(const std::vector<FileRecord>& files);

  // A coalition of at most L servers pools its keys and shares plus the
  // public transcript and attacks one user's file.  Reconstruction is
  // actually attempted when |C| >= t, and at audit scale the residual
  // entropy of the file given the coalition's whole view is measured
  // exactly.
  AttackOutcome collusion_attack(const std::vector<unsigned>& colluders,
                                 std::uint16_t target_user) const;

  // Reconstructs a user's file from the first `count` servers' stored
  // shares (count defaults to the user's threshold).
  FileRecord reconstruct_from_servers(std::uint16_t user_id,
                                      std::size_t count = 0) const;

  // Writes one subdirectory per server (server_<id>/u<user>_s<server>.key
  // and .share record files) plus a manifest.json describing the
  // deployment.  Deterministic: persisting an unchanged simulation twice
  // yields byte-identical trees.
  void persist(const std::string& dir) const;

  // Rebuilds server state from a persisted tree.  The restored simulation
  // has no user-side rings (those were consumed or never persisted), so it
  // supports inspection, reconstruction, and re-persisting, but not
  // run_store.
  static Simulation restore(const std::string& dir);

 private:
  Simulation() = default;

  StorageParams params_;
  std::uint64_t seed_ = 0;
  bool stored_ = false;
  std::vector<KeyRing> rings_;  // empty in restored simulations
  std::vector<ServerState> servers_;
  std::vector<PublicMessage> transcript_;
  std::map<std::uint16_t, FileRecord> originals_;
  ResourceReport report_;
  std::vector<std::string> log_;
};

// Declarative end-to-end scenario, loadable from JSON:
//   {"field_m": 2, "servers": 3, "seed": 42,
//    "users": [{"user_id": 1, "threshold": 2, "privacy": 1, "n_symbols": 1}],
//    "collusion_sets": [[1], [1, 2]]}
struct Scenario {
  unsigned field_m = 0;
  unsigned servers = 0;
  std::uint64_t seed = 0;
  std::vector<UserParams> users;
  std::vector<std::vector<unsigned>> collusion_sets;

  static Scenario from_json_text(const std::string& text);
  static Scenario builtin_default();
  StorageParams storage_params() const;  // field resolved to the canonical one
};

// Runs a scenario end to end: deploy, store capacity-filling random files,
// check the measured resources against the optima, mount every collusion
// attack against every user, persist/restore/re-persist and verify the trees
// match byte for byte.  Returns a JSON summary; throws on any failure a
// correct deployment should never exhibit.
std::string run_demo(const Scenario& scenario, const std::string& out_dir);

}  // namespace pfs

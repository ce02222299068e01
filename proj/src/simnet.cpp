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

#include "pfs/simnet.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "pfs/errors.hpp"
#include "pfs/serialize.hpp"

namespace pfs {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Distinct keystream domains for the independent random draws of one
// deployment, all derived from the single scenario seed.
constexpr std::uint64_t kStreamKeys = 1ull << 32;
constexpr std::uint64_t kStreamTapes = 2ull << 32;
constexpr std::uint64_t kStreamFiles = 3ull << 32;

std::string server_dir_name(unsigned server_id) {
  return "server_" + std::to_string(server_id);
}

std::string record_name(std::uint16_t user_id, unsigned server_id,
                        const char* suffix) {
  return "u" + std::to_string(user_id) + "_s" + std::to_string(server_id) +
         suffix;
}

}  // namespace

Simulation Simulation::deploy(const StorageParams& params, std::uint64_t seed) {
  params.validate();
  Simulation sim;
  sim.params_ = params;
  sim.seed_ = seed;

  sim.servers_.resize(params.servers);
  for (unsigned l = 1; l <= params.servers; ++l) {
    sim.servers_[l - 1].server_id = l;
  }

  for (const UserParams& u : params.users) {
    SymbolRng rng = SymbolRng::seeded(seed, kStreamKeys | u.user_id);
    KeyRing ring = KeyRing::generate(*params.field, u.user_id, params.servers,
                                     u.n_symbols, rng);
    for (unsigned l = 1; l <= params.servers; ++l) {
      sim.servers_[l - 1].keys[u.user_id] = ring.peek(l);
    }
    sim.rings_.push_back(std::move(ring));
  }

  std::ostringstream msg;
  msg << "deploy: GF(2^" << params.field->m() << "), " << params.servers
      << " servers, " << params.users.size() << " user(s), seed " << seed;
  sim.log_.push_back(msg.str());
  for (const UserParams& u : params.users) {
    sim.log_.push_back("keys distributed for user " + std::to_string(u.user_id) +
                       ": " + std::to_string(u.n_symbols) +
                       " symbols per server");
  }
  return sim;
}

const ServerState& Simulation::server(unsigned server_id) const {
  if (server_id < 1 || server_id > servers_.size()) {
    fail(ErrorCode::usage, "no server " + std::to_string(server_id) +
                               " in this deployment");
  }
  return servers_[server_id - 1];
}

void Simulation::run_store(const std::vector<FileRecord>& files) {
  if (rings_.empty()) {
    fail(ErrorCode::usage,
         "restored simulations hold server state only and cannot store");
  }
  if (stored_) {
    fail(ErrorCode::key_reuse,
         "this deployment's one-time keys were already spent");
  }

  std::vector<RandomTape> tapes;
  tapes.reserve(params_.users.size());
  for (std::size_t i = 0; i < params_.users.size(); ++i) {
    const UserParams& u = params_.users[i];
    SymbolRng rng = SymbolRng::seeded(seed_, kStreamTapes | u.user_id);
    const std::size_t len =
        params_.ramp_for(u).tape_len(u.file_symbols());
    tapes.push_back(RandomTape::draw(*params_.field, len, rng));
  }

  MultiStoreResult result = multi_user_store(params_, files, rings_, tapes);

  std::vector<StoredShare> all_shares;
  for (std::size_t i = 0; i < params_.users.size(); ++i) {
    const UserParams& u = params_.users[i];
    for (unsigned l = 1; l <= params_.servers; ++l) {
      const PublicMessage& message = result.messages[i][l - 1];
      // Each server sees only the message addressed to it and its own key.
      StoredShare share = server_ingest(*params_.field, message,
                                        servers_[l - 1].keys.at(u.user_id));
      all_shares.push_back(share);
      servers_[l - 1].shares[u.user_id] = std::move(share);
      transcript_.push_back(message);
    }
    originals_[u.user_id] = files[i];
    log_.push_back("stored file for user " + std::to_string(u.user_id) + " (" +
                   std::to_string(files[i].symbols.size()) + " symbols)");
  }

  report_ = std::move(result.report);
  report_.storage_bits = measure_storage(params_, all_shares);
  stored_ = true;
}

FileRecord Simulation::reconstruct_from_servers(std::uint16_t user_id,
                                                std::size_t count) const {
  const UserParams& u = params_.user(user_id);
  if (count == 0) count = u.threshold;
  if (count > params_.servers) {
    fail(ErrorCode::usage, "deployment only has " +
                               std::to_string(params_.servers) + " servers");
  }
  std::vector<StoredShare> shares;
  for (unsigned l = 1; l <= count; ++l) {
    const auto it = servers_[l - 1].shares.find(user_id);
    if (it == servers_[l - 1].shares.end()) {
      fail(ErrorCode::usage, "server " + std::to_string(l) +
                                 " holds no share for user " +
                                 std::to_string(user_id));
    }
    shares.push_back(it->second);
  }
  return reconstruct(shares);
}

AttackOutcome Simulation::collusion_attack(const std::vector<unsigned>& colluders,
                                           std::uint16_t target_user) const {
  const UserParams& u = params_.user(target_user);
  std::set<unsigned> distinct;
  for (const unsigned l : colluders) {
    if (l < 1 || l > params_.servers) {
      fail(ErrorCode::parameter, "colluder " + std::to_string(l) +
                                     " is not a server of this deployment");
    }
    if (!distinct.insert(l).second) {
      fail(ErrorCode::parameter, "duplicate colluder " + std::to_string(l));
    }
  }

  AttackOutcome outcome;
  outcome.colluders = colluders;
  std::sort(outcome.colluders.begin(), outcome.colluders.end());
  outcome.target_user = target_user;
  outcome.file_entropy_bits = Rational(
      static_cast<std::int64_t>(u.file_symbols()) * params_.field->m(), 1);
  outcome.profile_leakage_bits = ramp_subset_leakage_bits(
      params_.ramp_for(u), static_cast<unsigned>(distinct.size()),
      u.file_symbols());

  std::vector<StoredShare> pooled;
  for (const unsigned l : outcome.colluders) {
    const auto it = servers_[l - 1].shares.find(target_user);
    if (it != servers_[l - 1].shares.end()) pooled.push_back(it->second);
  }
  outcome.shares_available = pooled.size();
  outcome.can_reconstruct = pooled.size() >= u.threshold;

  if (outcome.can_reconstruct) {
    const FileRecord recovered = reconstruct(pooled);
    const auto orig = originals_.find(target_user);
    if (orig != originals_.end()) {
      outcome.recovered_matches = recovered.symbols == orig->second.symbols;
    }
  }

  // At audit scale, measure the coalition's residual uncertainty exactly:
  // H(F_target | all public messages, colluders' keys and shares of every
  // user).
  if (stored_ && audit_feasible(params_)) {
    const JointDistribution dist =
        JointDistribution::enumerate(params_, BreakMode::none);
    const VarId target[] = {VarId{VarKind::file, target_user, 0}};
    std::vector<VarId> view;
    for (const UserParams& other : params_.users) {
      for (unsigned l = 1; l <= params_.servers; ++l) {
        view.push_back(VarId{VarKind::message, other.user_id,
                             static_cast<std::uint16_t>(l)});
      }
      for (const unsigned l : outcome.colluders) {
        view.push_back(VarId{VarKind::key, other.user_id,
                             static_cast<std::uint16_t>(l)});
        view.push_back(VarId{VarKind::share, other.user_id,
                             static_cast<std::uint16_t>(l)});
      }
    }
    outcome.residual_entropy_bits =
        dist.conditional_entropy_bits(target, view);
  }

  return outcome;
}

void Simulation::persist(const std::string& dir) const {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    fail(ErrorCode::io, "cannot create '" + dir + "': " + ec.message());
  }

  json users = json::array();
  for (const UserParams& u : params_.users) {
    users.push_back(json{{"user_id", u.user_id},
                         {"threshold", u.threshold},
                         {"privacy", u.privacy},
                         {"n_symbols", u.n_symbols}});
  }
  const json manifest{{"field_m", params_.field->m()},
                      {"servers", params_.servers},
                      {"users", users},
                      {"stored", stored_}};

  std::ofstream mf(fs::path(dir) / "manifest.json",
                   std::ios::binary | std::ios::trunc);
  if (!mf) {
    fail(ErrorCode::io, "cannot write manifest in '" + dir + "'");
  }
  mf << manifest.dump(2) << "\n";
  mf.flush();
  if (!mf) {
    fail(ErrorCode::io, "write to manifest in '" + dir + "' failed");
  }

  for (const ServerState& server : servers_) {
    const fs::path sdir = fs::path(dir) / server_dir_name(server.server_id);
    fs::create_directories(sdir, ec);
    if (ec) {
      fail(ErrorCode::io, "cannot create '" + sdir.string() + "': " + ec.message());
    }
    for (const auto& [user_id, key] : server.keys) {
      wire::KeyRecord record;
      record.m = params_.field->m();
      record.user_id = user_id;
      record.server_id = static_cast<std::uint16_t>(server.server_id);
      record.symbols = key;
      wire::save_key_file(
          (sdir / record_name(user_id, server.server_id, ".key")).string(),
          record);
    }
    for (const auto& [user_id, share] : server.shares) {
      wire::save_payload_file(
          (sdir / record_name(user_id, server.server_id, ".share")).string(),
          wire::RecordType::share, share.meta, share.payload);
    }
  }
}

Simulation Simulation::restore(const std::string& dir) {
  const fs::path manifest_path = fs::path(dir) / "manifest.json";
  std::ifstream mf(manifest_path, std::ios::binary);
  if (!mf) {
    fail(ErrorCode::io, "cannot open '" + manifest_path.string() + "'");
  }
  json manifest;
  try {
    mf >> manifest;
  } catch (const json::exception& e) {
    fail(ErrorCode::format,
         "malformed manifest '" + manifest_path.string() + "': " + e.what());
  }

  Simulation sim;
  try {
    const unsigned m = manifest.at("field_m").get<unsigned>();
    sim.params_.field = &FieldSpec::get(m);
    sim.params_.servers = manifest.at("servers").get<unsigned>();
    for (const json& entry : manifest.at("users")) {
      UserParams u;
      u.user_id = entry.at("user_id").get<std::uint16_t>();
      u.threshold = entry.at("threshold").get<unsigned>();
      u.privacy = entry.at("privacy").get<unsigned>();
      u.n_symbols = entry.at("n_symbols").get<std::uint32_t>();
      sim.params_.users.push_back(u);
    }
    sim.stored_ = manifest.at("stored").get<bool>();
  } catch (const json::exception& e) {
    fail(ErrorCode::format,
         "manifest '" + manifest_path.string() + "' is missing fields: " +
             e.what());
  }
  sim.params_.validate();

  sim.servers_.resize(sim.params_.servers);
  for (unsigned l = 1; l <= sim.params_.servers; ++l) {
    ServerState& server = sim.servers_[l - 1];
    server.server_id = l;
    const fs::path sdir = fs::path(dir) / server_dir_name(l);
    for (const UserParams& u : sim.params_.users) {
      const fs::path key_path = sdir / record_name(u.user_id, l, ".key");
      const wire::KeyRecord key = wire::load_key_file(key_path.string());
      if (key.m != sim.params_.field->m() || key.user_id != u.user_id ||
          key.server_id != l || key.symbols.size() != u.n_symbols) {
        fail(ErrorCode::corruption,
             "key record '" + key_path.string() +
                 "' disagrees with the manifest");
      }
      server.keys[u.user_id] = key.symbols;

      if (sim.stored_) {
        const fs::path share_path = sdir / record_name(u.user_id, l, ".share");
        const wire::PayloadRecord rec =
            wire::load_payload_file(share_path.string(), wire::RecordType::share);
        if (rec.meta.user_id != u.user_id || rec.meta.server_id != l ||
            rec.meta.m != sim.params_.field->m()) {
          fail(ErrorCode::corruption,
               "share record '" + share_path.string() +
                   "' disagrees with the manifest");
        }
        StoredShare share;
        share.meta = rec.meta;
        share.payload = rec.payload;
        server.shares[u.user_id] = std::move(share);
      }
    }
  }

  if (sim.stored_) {
    std::vector<StoredShare> all_shares;
    for (const ServerState& server : sim.servers_) {
      for (const auto& [uid, share] : server.shares) all_shares.push_back(share);
    }
    sim.report_.storage_bits = measure_storage(sim.params_, all_shares);
  }
  sim.log_.push_back("restored server state from '" + dir + "'");
  return sim;
}

Scenario Scenario::from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::format, std::string("malformed scenario JSON: ") + e.what());
  }
  Scenario scenario;
  try {
    scenario.field_m = doc.at("field_m").get<unsigned>();
    scenario.servers = doc.at("servers").get<unsigned>();
    scenario.seed = doc.value("seed", std::uint64_t{0});
    for (const json& entry : doc.at("users")) {
      UserParams u;
      u.user_id = entry.at("user_id").get<std::uint16_t>();
      u.threshold = entry.at("threshold").get<unsigned>();
      u.privacy = entry.at("privacy").get<unsigned>();
      u.n_symbols = entry.at("n_symbols").get<std::uint32_t>();
      scenario.users.push_back(u);
    }
    if (doc.contains("collusion_sets")) {
      for (const json& set : doc.at("collusion_sets")) {
        scenario.collusion_sets.push_back(set.get<std::vector<unsigned>>());
      }
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::format, std::string("scenario JSON is missing fields: ") +
                                e.what());
  }
  scenario.storage_params().validate();
  return scenario;
}

Scenario Scenario::builtin_default() {
  Scenario scenario;
  scenario.field_m = 2;
  scenario.servers = 3;
  scenario.seed = 42;
  scenario.users.push_back(UserParams{1, 2, 1, 1});
  scenario.collusion_sets = {{1}, {1, 2}};
  return scenario;
}

StorageParams Scenario::storage_params() const {
  StorageParams params;
  params.field = &FieldSpec::get(field_m);
  params.servers = servers;
  params.users = users;
  return params;
}

namespace {

std::uint64_t file_stream_for(std::uint16_t user_id) {
  return kStreamFiles | user_id;
}

}  // namespace

std::string run_demo(const Scenario& scenario, const std::string& out_dir) {
  const StorageParams params = scenario.storage_params();
  params.validate();
  const FieldSpec& field = *params.field;

  Simulation sim = Simulation::deploy(params, scenario.seed);

  // Capacity-filling random files, one per user.
  std::vector<FileRecord> files;
  for (const UserParams& u : params.users) {
    SymbolRng rng = SymbolRng::seeded(scenario.seed, file_stream_for(u.user_id));
    files.push_back(FileRecord::from_symbols(
        params, u.user_id, rng.draw(field, u.file_symbols())));
  }
  sim.run_store(files);

  const OptimaTable optima = compute_optima(params);
  const AchievementVerdict verdict =
      verify_achievement(params, sim.report(), optima);

  json attacks = json::array();
  for (const auto& colluders : scenario.collusion_sets) {
    for (const UserParams& u : params.users) {
      const AttackOutcome outcome = sim.collusion_attack(colluders, u.user_id);
      json entry{{"colluders", outcome.colluders},
                 {"target_user", outcome.target_user},
                 {"shares_available", outcome.shares_available},
                 {"can_reconstruct", outcome.can_reconstruct},
                 {"file_entropy_bits", outcome.file_entropy_bits.to_string()},
                 {"profile_leakage_bits", outcome.profile_leakage_bits}};
      if (outcome.recovered_matches.has_value()) {
        entry["recovered_matches"] = *outcome.recovered_matches;
      }
      if (outcome.residual_entropy_bits.has_value()) {
        entry["residual_entropy_bits"] =
            outcome.residual_entropy_bits->to_string();
      }
      attacks.push_back(std::move(entry));
    }
  }

  // Whole-scheme audit when the deployment is small enough to enumerate.
  json audit_entry;
  if (audit_feasible(params)) {
    const AuditReport audit = run_audit(params, BreakMode::none);
    audit_entry = json{{"feasible", true}, {"pass", audit.pass},
                       {"atoms", audit.atom_count}};
  } else {
    audit_entry = json{{"feasible", false}};
  }

  // Persist, restore, persist again: the trees must match byte for byte.
  const fs::path state_dir = fs::path(out_dir) / "state";
  const fs::path check_dir = fs::path(out_dir) / "state_check";
  sim.persist(state_dir.string());
  Simulation restored = Simulation::restore(state_dir.string());
  restored.persist(check_dir.string());

  bool roundtrip_identical = true;
  for (auto it = fs::recursive_directory_iterator(state_dir);
       it != fs::recursive_directory_iterator(); ++it) {
    if (!it->is_regular_file()) continue;
    const fs::path rel = fs::relative(it->path(), state_dir);
    std::ifstream a(it->path(), std::ios::binary);
    std::ifstream b(check_dir / rel, std::ios::binary);
    if (!a || !b) {
      roundtrip_identical = false;
      break;
    }
    const std::string da((std::istreambuf_iterator<char>(a)),
                         std::istreambuf_iterator<char>());
    const std::string db((std::istreambuf_iterator<char>(b)),
                         std::istreambuf_iterator<char>());
    if (da != db) {
      roundtrip_identical = false;
      break;
    }
  }

  // End to end through disk: the restored servers must yield the files.
  bool reconstruct_ok = true;
  for (std::size_t i = 0; i < params.users.size(); ++i) {
    const FileRecord rebuilt =
        restored.reconstruct_from_servers(params.users[i].user_id);
    if (rebuilt.symbols != files[i].symbols) reconstruct_ok = false;
  }

  json scenario_json{{"field_m", scenario.field_m},
                     {"servers", scenario.servers},
                     {"seed", scenario.seed}};
  json scenario_users = json::array();
  for (const UserParams& u : scenario.users) {
    scenario_users.push_back(json{{"user_id", u.user_id},
                                  {"threshold", u.threshold},
                                  {"privacy", u.privacy},
                                  {"n_symbols", u.n_symbols}});
  }
  scenario_json["users"] = scenario_users;
  scenario_json["collusion_sets"] = scenario.collusion_sets;

  const bool ok = verdict.all_achieve && roundtrip_identical && reconstruct_ok &&
                  (!audit_entry.contains("pass") ||
                   audit_entry.at("pass").get<bool>());

  const json summary{{"scenario", scenario_json},
                     {"event_log", sim.event_log()},
                     {"resources", json::parse(achievement_json(verdict))},
                     {"attacks", attacks},
                     {"audit", audit_entry},
                     {"persist_dir", state_dir.string()},
                     {"persist_roundtrip_identical", roundtrip_identical},
                     {"reconstruct_ok", reconstruct_ok},
                     {"ok", ok}};
  return summary.dump(2);
}

}  // namespace pfs

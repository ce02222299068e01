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

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "pfs/errors.hpp"
#include "pfs/field.hpp"
#include "pfs/rational.hpp"
#include "test_util.hpp"

using pfs::AttackOutcome;
using pfs::ErrorCode;
using pfs::FieldSpec;
using pfs::FileRecord;
using pfs::Rational;
using pfs::Scenario;
using pfs::Simulation;
using pfs::StorageParams;
using pfs::Symbol;

namespace {

namespace fs = std::filesystem;

StorageParams tiny_params() {
  StorageParams p;
  p.field = &FieldSpec::get(2);
  p.servers = 3;
  p.users = {{1, 2, 1, 1}};
  return p;
}

std::vector<FileRecord> tiny_files(const StorageParams& p, Symbol value) {
  return {FileRecord::from_symbols(p, 1, {value})};
}

// Reads a whole file; empty on failure (the comparisons then fail loudly).
std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return data;
}

bool trees_identical(const fs::path& a, const fs::path& b) {
  std::vector<fs::path> rel_a, rel_b;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    rel_a.push_back(fs::relative(e.path(), a));
  }
  for (const auto& e : fs::recursive_directory_iterator(b)) {
    rel_b.push_back(fs::relative(e.path(), b));
  }
  std::sort(rel_a.begin(), rel_a.end());
  std::sort(rel_b.begin(), rel_b.end());
  if (rel_a != rel_b) return false;
  for (const fs::path& rel : rel_a) {
    if (fs::is_directory(a / rel)) continue;
    if (slurp(a / rel) != slurp(b / rel)) return false;
  }
  return true;
}

struct TempDir {
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path path;
};

}  // namespace

TEST_CASE("deployment is deterministic in the seed") {
  const StorageParams p = tiny_params();
  Simulation a = Simulation::deploy(p, 42);
  Simulation b = Simulation::deploy(p, 42);
  Simulation c = Simulation::deploy(p, 43);

  for (unsigned l = 1; l <= 3; ++l) {
    CHECK(a.server(l).keys == b.server(l).keys);
  }
  bool any_difference = false;
  for (unsigned l = 1; l <= 3; ++l) {
    if (a.server(l).keys != c.server(l).keys) any_difference = true;
  }
  CHECK(any_difference);
  CHECK_FALSE(a.event_log().empty());
  expect_error(ErrorCode::usage, [&] { (void)a.server(4); });
}

TEST_CASE("store distributes shares and is strictly one-shot") {
  Simulation sim = Simulation::deploy(tiny_params(), 7);
  sim.run_store(tiny_files(sim.params(), 2));

  CHECK(sim.transcript().size() == 3);
  for (unsigned l = 1; l <= 3; ++l) {
    CHECK(sim.server(l).shares.count(1) == 1);
  }
  const FileRecord back = sim.reconstruct_from_servers(1);
  CHECK(back.symbols == std::vector<Symbol>{2});

  // The reconstruction default uses t servers; asking for all three works
  // too because the extra share is consistent.
  CHECK(sim.reconstruct_from_servers(1, 3).symbols == std::vector<Symbol>{2});

  expect_error(ErrorCode::key_reuse,
               [&] { sim.run_store(tiny_files(sim.params(), 3)); });
}

TEST_CASE("collusion below the privacy threshold learns exactly nothing") {
  Simulation sim = Simulation::deploy(tiny_params(), 7);
  sim.run_store(tiny_files(sim.params(), 2));

  const AttackOutcome one = sim.collusion_attack({2}, 1);
  CHECK(one.shares_available == 1);
  CHECK_FALSE(one.can_reconstruct);
  CHECK_FALSE(one.recovered_matches.has_value());
  CHECK(one.file_entropy_bits == Rational(2, 1));
  CHECK(one.profile_leakage_bits == 0);
  REQUIRE(one.residual_entropy_bits.has_value());
  // Exact: the coalition's whole view leaves the file's full 2 bits open.
  CHECK(*one.residual_entropy_bits == Rational(2, 1));
}

TEST_CASE("collusion at the threshold recovers the file outright") {
  Simulation sim = Simulation::deploy(tiny_params(), 7);
  sim.run_store(tiny_files(sim.params(), 2));

  const AttackOutcome two = sim.collusion_attack({1, 3}, 1);
  CHECK(two.can_reconstruct);
  REQUIRE(two.recovered_matches.has_value());
  CHECK(*two.recovered_matches);
  CHECK(two.profile_leakage_bits == 2);
  REQUIRE(two.residual_entropy_bits.has_value());
  CHECK(two.residual_entropy_bits->is_zero());
}

TEST_CASE("collusion attacks validate their inputs") {
  Simulation sim = Simulation::deploy(tiny_params(), 7);
  sim.run_store(tiny_files(sim.params(), 2));
  expect_error(ErrorCode::parameter, [&] { (void)sim.collusion_attack({4}, 1); });
  expect_error(ErrorCode::parameter,
               [&] { (void)sim.collusion_attack({1, 1}, 1); });
  expect_error(ErrorCode::parameter, [&] { (void)sim.collusion_attack({1}, 9); });
}

TEST_CASE("persist, restore and re-persist are byte-stable") {
  TempDir dir("pfs_simnet_persist");
  const fs::path first = dir.path / "state";
  const fs::path second = dir.path / "state_check";

  Simulation sim = Simulation::deploy(tiny_params(), 7);
  sim.run_store(tiny_files(sim.params(), 1));
  sim.persist(first.string());
  sim.persist(second.string());
  CHECK(trees_identical(first, second));

  Simulation back = Simulation::restore(first.string());
  CHECK(back.reconstruct_from_servers(1).symbols == std::vector<Symbol>{1});

  const fs::path third = dir.path / "state_again";
  back.persist(third.string());
  CHECK(trees_identical(first, third));

  // Restored simulations hold server state only; they cannot store again.
  expect_error(ErrorCode::usage,
               [&] { back.run_store(tiny_files(back.params(), 2)); });
}

TEST_CASE("restore rejects missing or tampered trees") {
  TempDir dir("pfs_simnet_restore");
  expect_error(ErrorCode::io, [&] {
    (void)Simulation::restore((dir.path / "absent").string());
  });

  const fs::path state = dir.path / "state";
  Simulation sim = Simulation::deploy(tiny_params(), 7);
  sim.run_store(tiny_files(sim.params(), 1));
  sim.persist(state.string());

  // Claim a different field than the records were written for.
  nlohmann::json manifest =
      nlohmann::json::parse(slurp(state / "manifest.json"));
  manifest["field_m"] = 3;
  std::ofstream(state / "manifest.json") << manifest.dump(2);
  expect_error(ErrorCode::corruption,
               [&] { (void)Simulation::restore(state.string()); });
}

TEST_CASE("scenarios parse from JSON and reject malformed documents") {
  const Scenario s = Scenario::from_json_text(R"({
    "field_m": 2, "servers": 3, "seed": 42,
    "users": [{"user_id": 1, "threshold": 2, "privacy": 1, "n_symbols": 1}],
    "collusion_sets": [[1], [1, 2]]
  })");
  CHECK(s.field_m == 2);
  CHECK(s.servers == 3);
  CHECK(s.seed == 42);
  REQUIRE(s.users.size() == 1);
  CHECK(s.users[0].threshold == 2);
  CHECK(s.collusion_sets.size() == 2);
  s.storage_params().validate();

  expect_error(ErrorCode::format,
               [] { (void)Scenario::from_json_text("not json"); });
  expect_error(ErrorCode::format, [] {
    (void)Scenario::from_json_text(R"({"field_m": 2, "servers": 3})");
  });

  const Scenario d = Scenario::builtin_default();
  d.storage_params().validate();
  CHECK_FALSE(d.collusion_sets.empty());
}

TEST_CASE("the end-to-end demo reports success and leaves a valid tree") {
  TempDir dir("pfs_simnet_demo");
  const std::string summary_text =
      pfs::run_demo(Scenario::builtin_default(), (dir.path / "out").string());
  const nlohmann::json summary = nlohmann::json::parse(summary_text);
  CHECK(summary["ok"] == true);
  CHECK(summary["resources"]["all_achieve_optimum"] == true);
  CHECK(summary["persist_roundtrip_identical"] == true);
  CHECK(summary["reconstruct_ok"] == true);
  CHECK(summary["audit"]["pass"] == true);
  REQUIRE(summary["attacks"].is_array());
  CHECK(summary["attacks"].size() == 2);

  // The persisted tree restores into a working simulation.
  Simulation back = Simulation::restore((dir.path / "out/state").string());
  CHECK_FALSE(back.params().users.empty());
}

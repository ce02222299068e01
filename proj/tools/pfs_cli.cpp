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

// Command-line front end for the private distributed-storage library.
// Deliberately a pure consumer of the C API in pfs.h: everything it does, an
// external program could do the same way.  Exit codes are the pfs_status
// values (0 ok, 2 validation, 3 capacity, 4 key reuse, 5 audit failure,
// 6 io, 1 internal).

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pfs.h"

namespace {

using nlohmann::json;

int report_failure(pfs_status status) {
  std::cerr << "error (" << pfs_status_name(status) << "): " << pfs_last_error()
            << "\n";
  return static_cast<int>(status);
}

void print_and_free(char* text) {
  if (text != nullptr) {
    std::cout << text << "\n";
    pfs_string_free(text);
  }
}

// Shared single-user parameter flags for audit/bounds; --params FILE overrides
// them with a full JSON description (needed for multi-user deployments).
struct ParamFlags {
  std::string params_file;
  unsigned field_m = 2;
  unsigned servers = 3;
  std::uint16_t user_id = 1;
  unsigned threshold = 2;
  unsigned privacy = 1;
  std::uint32_t n_symbols = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--params", params_file,
                    "JSON file describing the deployment (overrides the flags "
                    "below; required for multi-user deployments)");
    cmd->add_option("--field", field_m, "symbol width m of GF(2^m)")
        ->check(CLI::Range(1u, 8u));
    cmd->add_option("--servers", servers, "number of servers L");
    cmd->add_option("--user", user_id, "user id");
    cmd->add_option("--threshold", threshold, "reconstruction threshold t");
    cmd->add_option("--privacy", privacy, "collusion resistance z");
    cmd->add_option("--symbols", n_symbols, "per-server key length n, symbols");
  }

  // Returns the JSON text the C API expects.
  std::string to_json_text() const {
    if (!params_file.empty()) {
      std::ifstream in(params_file, std::ios::binary);
      if (!in) {
        std::cerr << "error (io-error): cannot open '" << params_file << "'\n";
        std::exit(PFS_ERR_IO);
      }
      std::ostringstream text;
      text << in.rdbuf();
      return text.str();
    }
    const json doc{{"field_m", field_m},
                   {"servers", servers},
                   {"users", json::array({json{{"user_id", user_id},
                                               {"threshold", threshold},
                                               {"privacy", privacy},
                                               {"n_symbols", n_symbols}}})}};
    return doc.dump();
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"private distributed storage: ramp sharing over one-time-padded "
               "public channels, with an exact leakage auditor"};
  app.set_version_flag("--version", pfs_version());
  app.require_subcommand(1);

  // ---- keygen ------------------------------------------------------------
  auto* keygen = app.add_subcommand(
      "keygen", "generate one-time key files for a user across all servers");
  std::string kg_out;
  unsigned kg_field = 8;
  std::uint16_t kg_user = 1;
  unsigned kg_servers = 0;
  std::uint32_t kg_symbols = 0;
  std::uint64_t kg_seed = 0;
  keygen->add_option("--out", kg_out, "directory for u<user>_s<server>.key files")
      ->required();
  keygen->add_option("--field", kg_field, "symbol width m of GF(2^m)")
      ->check(CLI::Range(1u, 8u));
  keygen->add_option("--user", kg_user, "user id");
  keygen->add_option("--servers", kg_servers, "number of servers L")->required();
  keygen->add_option("--symbols", kg_symbols, "key length n per server, symbols")
      ->required();
  auto* kg_seed_opt = keygen->add_option(
      "--seed", kg_seed, "deterministic seed (omit for system entropy)");

  // ---- store ---------------------------------------------------------------
  auto* store = app.add_subcommand(
      "store", "split a file into one-time-padded messages, one per server");
  std::string st_input, st_keys, st_out;
  std::uint16_t st_user = 1;
  unsigned st_threshold = 0;
  unsigned st_privacy = 0;
  std::uint64_t st_seed = 0;
  store->add_option("input", st_input, "file to store")->required();
  store->add_option("--keys", st_keys, "directory holding this user's key files")
      ->required();
  store->add_option("--user", st_user, "user id");
  store->add_option("--threshold", st_threshold, "reconstruction threshold t")
      ->required();
  store->add_option("--privacy", st_privacy, "collusion resistance z")
      ->required();
  store->add_option("--out", st_out, "directory for u<user>_s<server>.msg files")
      ->required();
  auto* st_seed_opt = store->add_option(
      "--seed", st_seed, "deterministic seed for the encoding randomness");

  // ---- ingest --------------------------------------------------------------
  auto* ingest = app.add_subcommand(
      "ingest", "server side: strip the pad from a message and keep the share");
  std::string in_message, in_key, in_out;
  ingest->add_option("--message", in_message, "message file from the channel")
      ->required();
  ingest->add_option("--key", in_key, "this server's key file for the user")
      ->required();
  ingest->add_option("--out", in_out, "share file to write")->required();

  // ---- reconstruct -----------------------------------------------------------
  auto* reconstruct = app.add_subcommand(
      "reconstruct", "rebuild the original file from share files");
  std::vector<std::string> rc_shares;
  std::string rc_out;
  reconstruct->add_option("shares", rc_shares, "share files (any t of them)")
      ->required()
      ->expected(-1);
  reconstruct->add_option("--out", rc_out, "where to write the rebuilt file")
      ->required();

  // ---- audit -----------------------------------------------------------------
  auto* audit = app.add_subcommand(
      "audit", "measure the deployment's exact information leakage by "
               "enumerating every input");
  ParamFlags au_params;
  au_params.attach(audit);
  std::string au_break = "none";
  audit->add_option("--break", au_break,
                    "deliberately sabotage the strategy under audit")
      ->check(CLI::IsMember({"none", "no-otp", "asym"}));

  // ---- bounds ---------------------------------------------------------------
  auto* bounds = app.add_subcommand(
      "bounds", "closed-form optimal resource costs for a deployment");
  ParamFlags bo_params;
  bo_params.attach(bounds);
  bool bo_frontier = false;
  bounds->add_flag("--frontier", bo_frontier,
                   "sweep every (t, z) for the given key budget instead");

  // ---- demo -----------------------------------------------------------------
  auto* demo = app.add_subcommand(
      "demo", "run a whole deployment in memory: store, attack, persist, "
              "restore, verify");
  std::string de_scenario, de_out = "demo_out";
  demo->add_option("--scenario", de_scenario,
                   "scenario JSON file (omit for the built-in default)");
  demo->add_option("--out", de_out, "directory for the demo's artifacts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return PFS_ERR_VALIDATION;
  }

  if (keygen->parsed()) {
    const pfs_status status =
        pfs_keygen(kg_out.c_str(), kg_field, kg_user, kg_servers, kg_symbols,
                   kg_seed_opt->count() > 0 ? 1 : 0, kg_seed);
    if (status != PFS_OK) return report_failure(status);
    std::cout << "wrote " << kg_servers << " key files to " << kg_out << "\n";
    return 0;
  }

  if (store->parsed()) {
    char* report = nullptr;
    const pfs_status status = pfs_store(
        st_input.c_str(), st_keys.c_str(), st_user, st_threshold, st_privacy,
        st_out.c_str(), st_seed_opt->count() > 0 ? 1 : 0, st_seed, &report);
    if (status != PFS_OK) return report_failure(status);
    print_and_free(report);
    return 0;
  }

  if (ingest->parsed()) {
    const pfs_status status =
        pfs_ingest(in_message.c_str(), in_key.c_str(), in_out.c_str());
    if (status != PFS_OK) return report_failure(status);
    std::cout << "wrote share " << in_out << "\n";
    return 0;
  }

  if (reconstruct->parsed()) {
    std::vector<const char*> paths;
    paths.reserve(rc_shares.size());
    for (const std::string& s : rc_shares) paths.push_back(s.c_str());
    char* summary = nullptr;
    const pfs_status status = pfs_reconstruct(paths.data(), paths.size(),
                                              rc_out.c_str(), &summary);
    if (status != PFS_OK) return report_failure(status);
    print_and_free(summary);
    return 0;
  }

  if (audit->parsed()) {
    const std::string params = au_params.to_json_text();
    char* report = nullptr;
    int passed = 0;
    const pfs_status status =
        pfs_audit(params.c_str(), au_break.c_str(), &report, &passed);
    if (status != PFS_OK) return report_failure(status);
    print_and_free(report);
    if (passed == 0) {
      std::cerr << "audit failed: an audited property does not hold\n";
      return PFS_ERR_AUDIT;
    }
    return 0;
  }

  if (bounds->parsed()) {
    std::string request;
    if (bo_frontier) {
      const json doc{{"frontier", json{{"field_m", bo_params.field_m},
                                       {"servers", bo_params.servers},
                                       {"n_symbols", bo_params.n_symbols}}}};
      request = doc.dump();
    } else {
      request = bo_params.to_json_text();
    }
    char* table = nullptr;
    const pfs_status status = pfs_bounds(request.c_str(), &table);
    if (status != PFS_OK) return report_failure(status);
    print_and_free(table);
    return 0;
  }

  if (demo->parsed()) {
    char* summary = nullptr;
    const pfs_status status =
        pfs_demo(de_scenario.empty() ? nullptr : de_scenario.c_str(),
                 de_out.c_str(), &summary);
    if (status != PFS_OK) return report_failure(status);
    print_and_free(summary);
    return 0;
  }

  return PFS_ERR_VALIDATION;  // unreachable: require_subcommand(1)
}

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

#include "pfs/bounds.hpp"

#include <string>

#include "pfs/errors.hpp"

namespace pfs {

OptimaTable compute_optima(const StorageParams& params) {
  params.validate();
  const std::uint64_t m = params.field->m();

  OptimaTable table;
  for (const UserParams& u : params.users) {
    UserOptima o;
    o.user_id = u.user_id;
    const std::uint64_t n = u.n_symbols;
    o.file_bits = n * (u.threshold - u.privacy) * m;
    o.randomness_bits = n * u.privacy * m;
    o.message_bits_per_server = n * m;
    o.message_total_bits = params.servers * n * m;
    table.users.push_back(o);
    table.storage_bits_per_server += n * m;
  }
  return table;
}

namespace {

void add_check(AchievementVerdict& verdict, std::string quantity,
               std::uint16_t user_id, unsigned server_id,
               std::uint64_t measured, std::uint64_t optimal, std::string note) {
  BoundCheck check;
  check.quantity = std::move(quantity);
  check.user_id = user_id;
  check.server_id = server_id;
  check.measured = measured;
  check.optimal = optimal;
  check.achieves = measured == optimal;
  check.note = std::move(note);
  verdict.all_achieve = verdict.all_achieve && check.achieves;
  verdict.checks.push_back(std::move(check));
}

}  // namespace

AchievementVerdict verify_achievement(const StorageParams& params,
                                      const ResourceReport& report,
                                      const OptimaTable& optima) {
  params.validate();
  if (report.users.size() != optima.users.size()) {
    fail(ErrorCode::usage,
         "report and optima cover different numbers of users");
  }

  AchievementVerdict verdict;
  verdict.all_achieve = true;

  for (std::size_t i = 0; i < report.users.size(); ++i) {
    const UserMeasurement& meas = report.users[i];
    const UserOptima& opt = optima.users[i];
    if (meas.user_id != opt.user_id) {
      fail(ErrorCode::usage, "report and optima user order disagree");
    }

    std::string pad_note;
    if (meas.plaintext_bits < meas.file_bits) {
      pad_note = "plaintext of " + std::to_string(meas.plaintext_bits) +
                 " bits padded up to the " + std::to_string(meas.file_bits) +
                 "-bit capacity";
    }
    add_check(verdict, "file_bits", meas.user_id, 0, meas.file_bits,
              opt.file_bits, pad_note);
    add_check(verdict, "randomness_bits", meas.user_id, 0, meas.randomness_bits,
              opt.randomness_bits, "");
    for (std::size_t l = 0; l < meas.message_bits.size(); ++l) {
      add_check(verdict, "message_bits", meas.user_id,
                static_cast<unsigned>(l + 1), meas.message_bits[l],
                opt.message_bits_per_server, "");
    }
    add_check(verdict, "message_total_bits", meas.user_id, 0,
              meas.message_total_bits, opt.message_total_bits, "");
  }

  for (std::size_t l = 0; l < report.storage_bits.size(); ++l) {
    add_check(verdict, "storage_bits", 0, static_cast<unsigned>(l + 1),
              report.storage_bits[l], optima.storage_bits_per_server, "");
  }

  return verdict;
}

std::vector<FrontierRow> capacity_frontier(const FieldSpec& field,
                                           unsigned servers,
                                           std::uint32_t n_symbols) {
  if (servers < 2) {
    fail(ErrorCode::parameter, "a frontier needs at least two servers");
  }
  if (servers > field.order()) {
    fail(ErrorCode::parameter,
         "L=" + std::to_string(servers) + " exceeds the field's " +
             std::to_string(field.order()) +
             " evaluation points (the nonzero elements plus infinity)");
  }
  if (n_symbols == 0) {
    fail(ErrorCode::parameter, "key length must be positive");
  }

  const std::uint64_t m = field.m();
  const std::uint64_t n = n_symbols;
  std::vector<FrontierRow> rows;
  for (unsigned t = 2; t <= servers; ++t) {
    for (unsigned z = 1; z < t; ++z) {
      FrontierRow row;
      row.threshold = t;
      row.privacy = z;
      row.file_bits = n * (t - z) * m;
      row.randomness_bits = n * z * m;
      row.message_total_bits = servers * n * m;
      row.storage_bits_per_server = n * m;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace pfs

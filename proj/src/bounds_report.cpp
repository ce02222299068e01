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

#include "json.hpp"
#include "pfs/bounds.hpp"

namespace pfs {

namespace {
using nlohmann::json;
}

std::string optima_json(const OptimaTable& table) {
  json users = json::array();
  for (const UserOptima& o : table.users) {
    users.push_back(json{{"user_id", o.user_id},
                         {"file_bits", o.file_bits},
                         {"randomness_bits", o.randomness_bits},
                         {"message_bits_per_server", o.message_bits_per_server},
                         {"message_total_bits", o.message_total_bits}});
  }
  const json doc{{"users", users},
                 {"storage_bits_per_server", table.storage_bits_per_server}};
  return doc.dump(2);
}

std::string achievement_json(const AchievementVerdict& verdict) {
  json checks = json::array();
  for (const BoundCheck& c : verdict.checks) {
    json entry{{"quantity", c.quantity},
               {"measured", c.measured},
               {"optimal", c.optimal},
               {"achieves_optimum", c.achieves}};
    if (c.user_id != 0) entry["user_id"] = c.user_id;
    if (c.server_id != 0) entry["server_id"] = c.server_id;
    if (!c.note.empty()) entry["note"] = c.note;
    checks.push_back(std::move(entry));
  }
  const json doc{{"checks", checks}, {"all_achieve_optimum", verdict.all_achieve}};
  return doc.dump(2);
}

std::string frontier_json(const std::vector<FrontierRow>& rows) {
  json out = json::array();
  for (const FrontierRow& r : rows) {
    out.push_back(json{{"threshold", r.threshold},
                       {"privacy", r.privacy},
                       {"file_bits", r.file_bits},
                       {"randomness_bits", r.randomness_bits},
                       {"message_total_bits", r.message_total_bits},
                       {"storage_bits_per_server", r.storage_bits_per_server}});
  }
  return json{{"frontier", out}}.dump(2);
}

}  // namespace pfs

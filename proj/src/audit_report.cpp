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

#include <sstream>

#include "json.hpp"
#include "pfs/audit.hpp"

namespace pfs {

namespace {

using nlohmann::json;

json rational_json(const Rational& r) {
  return json{{"exact", r.to_string()}, {"value", r.to_double()}};
}

json subset_json(const SubsetStat& stat) {
  return json{{"servers", stat.servers},
              {"bits", rational_json(stat.bits)},
              {"expected_bits", rational_json(stat.expected_bits)},
              {"pass", stat.pass}};
}

std::string servers_label(const std::vector<unsigned>& servers) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < servers.size(); ++i) {
    if (i) out << ",";
    out << servers[i];
  }
  out << "}";
  return out.str();
}

}  // namespace

std::string audit_report_json(const AuditReport& report) {
  json users = json::array();
  for (const UserAudit& ua : report.users) {
    json security = json::array();
    for (const SubsetStat& s : ua.security) security.push_back(subset_json(s));
    json alpha = json::array();
    for (const SubsetStat& s : ua.alpha) alpha.push_back(subset_json(s));
    json conditional = json::array();
    for (const SubsetStat& s : ua.conditional) conditional.push_back(subset_json(s));
    users.push_back(json{{"user_id", ua.user_id},
                         {"file_entropy_bits", rational_json(ua.file_entropy_bits)},
                         {"security", security},
                         {"alpha", alpha},
                         {"conditional", conditional},
                         {"security_pass", ua.security_pass},
                         {"recoverability_pass", ua.recoverability_pass},
                         {"conditional_profile_pass", ua.conditional_profile_pass},
                         {"alpha_profile_pass", ua.alpha_profile_pass},
                         {"symmetry_pass", ua.symmetry_pass}});
  }

  json params = json::array();
  for (const UserParams& u : report.user_params) {
    params.push_back(json{{"user_id", u.user_id},
                          {"threshold", u.threshold},
                          {"privacy", u.privacy},
                          {"n_symbols", u.n_symbols}});
  }

  const json doc{{"field_m", report.field_m},
                 {"servers", report.servers},
                 {"mode", break_mode_name(report.mode)},
                 {"atoms", report.atom_count},
                 {"atom_bits", report.atom_bits},
                 {"users", params},
                 {"audit", users},
                 {"messages_marginally_uniform", report.messages_marginally_uniform},
                 {"pass", report.pass}};
  return doc.dump(2);
}

std::string audit_report_text(const AuditReport& report) {
  std::ostringstream out;
  out << "exact leakage audit: GF(2^" << report.field_m << "), L="
      << report.servers << ", mode=" << break_mode_name(report.mode) << ", "
      << report.atom_count << " atoms of " << report.atom_bits << " bits\n";

  for (std::size_t i = 0; i < report.users.size(); ++i) {
    const UserAudit& ua = report.users[i];
    const UserParams& u = report.user_params[i];
    out << "user " << ua.user_id << " (t=" << u.threshold << ", z=" << u.privacy
        << ", n=" << u.n_symbols << "): H(F) = "
        << ua.file_entropy_bits.to_string() << " bits\n";

    out << "  security I(F;M,K_U) by |U|:\n";
    for (const SubsetStat& s : ua.security) {
      out << "    U=" << servers_label(s.servers) << " -> "
          << s.bits.to_string() << " bits";
      if (s.servers.size() <= u.privacy) {
        out << (s.pass ? "  [ok: zero required]" : "  [FAIL: must be zero]");
      }
      out << "\n";
    }

    out << "  share-subset leakage I(F;M_S,K_S) vs profile:\n";
    for (const SubsetStat& s : ua.alpha) {
      out << "    S=" << servers_label(s.servers) << " -> "
          << s.bits.to_string() << " bits, profile "
          << s.expected_bits.to_string()
          << (s.pass ? "  [ok]" : "  [FAIL]") << "\n";
    }

    out << "  residual uncertainty H(F|S_A):\n";
    for (const SubsetStat& s : ua.conditional) {
      out << "    A=" << servers_label(s.servers) << " -> "
          << s.bits.to_string() << " bits, expected "
          << s.expected_bits.to_string()
          << (s.pass ? "  [ok]" : "  [FAIL]") << "\n";
    }

    out << "  verdicts: security " << (ua.security_pass ? "pass" : "FAIL")
        << ", recoverability " << (ua.recoverability_pass ? "pass" : "FAIL")
        << ", leakage profile " << (ua.alpha_profile_pass ? "pass" : "FAIL")
        << ", conditional profile "
        << (ua.conditional_profile_pass ? "pass" : "FAIL") << ", symmetry "
        << (ua.symmetry_pass ? "pass" : "FAIL") << "\n";
  }

  out << "message marginals uniform: "
      << (report.messages_marginally_uniform ? "yes" : "NO") << "\n";
  out << "overall: " << (report.pass ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace pfs

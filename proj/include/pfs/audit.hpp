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
#include <span>
#include <string>
#include <vector>

#include "pfs/protocol.hpp"
#include "pfs/rational.hpp"

namespace pfs {

// The audit measures information leakage by brute force: it enumerates every
// possible assignment of the protocol's random inputs (all users' files,
// tapes, and keys, each uniform and independent), pushes each assignment
// through the real encode/pad/ingest pipeline, and computes entropies and
// mutual informations over the resulting exact joint distribution.  Atoms
// are equiprobable, counts are integers, and every reported quantity is an
// exact rational -- a zero is a theorem about the scheme at these
// parameters, not a numerical artifact.

// Guard rails.  Past either limit the enumeration would be silently
// unaffordable or atoms would no longer fit one machine word, so the audit
// refuses loudly (Error(scale)) instead of degrading.
inline constexpr std::uint64_t kMaxAuditAtoms = 1ull << 24;
inline constexpr unsigned kMaxAtomBits = 64;

// A random variable of the audited system.
enum class VarKind : std::uint8_t {
  file = 0,     // F_d
  tape = 1,     // R_d
  key = 2,      // K_{d,l}
  message = 3,  // M_{d,l}
  share = 4,    // S_{d,l}
};

struct VarId {
  VarKind kind = VarKind::file;
  std::uint16_t user_id = 0;
  std::uint16_t server_id = 0;  // 0 for file/tape

  bool operator==(const VarId& o) const = default;
  bool operator<(const VarId& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (user_id != o.user_id) return user_id < o.user_id;
    return server_id < o.server_id;
  }
  std::string label() const;  // "F_1", "R_2", "K_1,3", "M_1,3", "S_1,3"
};

// Deliberately broken strategy variants for exercising the audit's teeth.
enum class BreakMode {
  none,            // the honest scheme
  no_otp,          // every message skips the pad: M_l = H_l in the clear
  no_pad_server1,  // only server 1's message skips the pad (asymmetric)
};

const char* break_mode_name(BreakMode mode);

// True iff the deployment fits inside both guard rails.
bool audit_feasible(const StorageParams& params);

class JointDistribution {
 public:
  // Runs the enumeration for a deployment; mode selects the strategy.
  static JointDistribution enumerate(const StorageParams& params, BreakMode mode);

  std::uint64_t atom_count() const { return atoms_.size(); }
  unsigned atom_bits() const { return total_bits_; }

  struct Var {
    VarId id;
    unsigned symbols = 0;
    unsigned offset = 0;  // bit offset within the packed atom
    unsigned bits = 0;
  };
  const std::vector<Var>& variables() const { return vars_; }

  // All queries are exact.  Variable sets are deduplicated internally, so
  // overlapping X and Y are handled by the identity
  // I(X;Y) = H(X) + H(Y) - H(X u Y).
  Rational entropy_bits(std::span<const VarId> vars) const;
  Rational conditional_entropy_bits(std::span<const VarId> x,
                                    std::span<const VarId> given) const;
  Rational mutual_information_bits(std::span<const VarId> x,
                                   std::span<const VarId> y) const;

  // Exact independence via the integer factorization test
  // count(x,y) * N == count(x) * count(y) for every realized pair; immune to
  // rounding by construction.  mutual_information_bits reports zero iff this
  // holds.
  bool independent(std::span<const VarId> x, std::span<const VarId> y) const;

 private:
  JointDistribution() = default;

  const Var& find_var(const VarId& id) const;
  std::vector<Var> select(std::span<const VarId> ids) const;  // sorted, deduped
  unsigned key_bits(const std::vector<Var>& sel) const;
  std::uint64_t extract(std::uint64_t atom, const std::vector<Var>& sel) const;
  std::vector<std::uint64_t> group_counts(const std::vector<Var>& sel) const;
  Rational entropy_from_counts(const std::vector<std::uint64_t>& counts) const;

  std::vector<Var> vars_;
  std::vector<std::uint64_t> atoms_;
  unsigned total_bits_ = 0;
  unsigned m_ = 0;
};

// One audited subset of servers and its exact measured quantity.
struct SubsetStat {
  std::vector<unsigned> servers;
  Rational bits;
  Rational expected_bits;  // what the scheme's profile predicts
  bool pass = false;
};

struct UserAudit {
  std::uint16_t user_id = 0;
  Rational file_entropy_bits;

  // I(F_{Z_d}; M_all, K_U) for every subset U of servers, where Z_d is the
  // set of users with privacy >= this user's (so a break against any of them
  // is visible).  Must be exactly zero whenever |U| <= z_d.
  std::vector<SubsetStat> security;

  // alpha_i table: I(F_d; M_{d,S}, K_{d,S}) over subsets S of the user's own
  // messages and keys; the scheme's profile is the ramp leakage fraction.
  std::vector<SubsetStat> alpha;

  // H(F_d | S_A): zero once |A| >= t, the ramp fraction
  // (t - |A|)/(t - z) * H(F) for z < |A| < t, and H(F) below.
  std::vector<SubsetStat> conditional;

  bool security_pass = false;         // zero leakage for all |U| <= z
  bool recoverability_pass = false;   // H(F|S_A) == 0 for all |A| >= t
  bool conditional_profile_pass = false;
  bool alpha_profile_pass = false;
  // Equal-size subsets agree, in both the security and alpha tables.
  bool symmetry_pass = false;
};

struct AuditReport {
  unsigned field_m = 0;
  unsigned servers = 0;
  BreakMode mode = BreakMode::none;
  std::uint64_t atom_count = 0;
  unsigned atom_bits = 0;
  std::vector<UserParams> user_params;
  std::vector<UserAudit> users;
  bool messages_marginally_uniform = false;  // each M_{d,l} alone is uniform
  bool pass = false;
};

// Runs the full audit for a deployment.  `pass` is true iff every audited
// property holds; sabotaged modes are expected to come back false.
AuditReport run_audit(const StorageParams& params, BreakMode mode = BreakMode::none);

std::string audit_report_json(const AuditReport& report);
std::string audit_report_text(const AuditReport& report);

}  // namespace pfs

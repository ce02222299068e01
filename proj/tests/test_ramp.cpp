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

#include "pfs/ramp.hpp"

#include <array>
#include <utility>
#include <vector>

#include "doctest.h"
#include "pfs/errors.hpp"
#include "pfs/field.hpp"
#include "test_util.hpp"

using pfs::ErrorCode;
using pfs::FieldSpec;
using pfs::RampParams;
using pfs::RandomTape;
using pfs::ShareBundle;
using pfs::Symbol;

namespace {

RampParams gf4_params(unsigned servers, unsigned threshold, unsigned privacy) {
  RampParams p;
  p.field = &FieldSpec::get(2);
  p.servers = servers;
  p.threshold = threshold;
  p.privacy = privacy;
  return p;
}

ShareBundle encode(const RampParams& p, std::vector<Symbol> secret,
                   std::vector<Symbol> tape) {
  return ramp_encode(p, secret,
                     RandomTape::from_symbols(*p.field, std::move(tape)));
}

}  // namespace

TEST_CASE("parameter validation enforces the ramp regime") {
  expect_error(ErrorCode::parameter, [] { gf4_params(3, 2, 0).validate(); });
  expect_error(ErrorCode::parameter, [] { gf4_params(3, 1, 1).validate(); });
  expect_error(ErrorCode::parameter, [] { gf4_params(2, 3, 1).validate(); });
  // L may reach q (the nonzero points plus the point at infinity), not beyond.
  gf4_params(4, 3, 1).validate();
  expect_error(ErrorCode::parameter, [] { gf4_params(5, 3, 1).validate(); });
  expect_error(ErrorCode::parameter, [] {
    RampParams p;
    p.servers = 3;
    p.threshold = 2;
    p.privacy = 1;
    p.validate();
  });
}

TEST_CASE("length accounting per parameter set") {
  const RampParams p = gf4_params(3, 2, 1);
  CHECK(p.block_len() == 1);
  CHECK(p.share_len(4) == 4);
  CHECK(p.tape_len(4) == 4);

  const RampParams wide = gf4_params(4, 3, 1);
  CHECK(wide.block_len() == 2);
  CHECK(wide.share_len(6) == 3);
  CHECK(wide.tape_len(6) == 3);
}

TEST_CASE("known encodings over GF(4)") {
  // t=2, z=1: f(x) = s + r x on points 1, 2, 3.
  const RampParams p = gf4_params(3, 2, 1);
  ShareBundle b = encode(p, {1}, {1});
  REQUIRE(b.shares.size() == 3);
  CHECK(b.shares[0] == std::vector<Symbol>{0});
  CHECK(b.shares[1] == std::vector<Symbol>{3});
  CHECK(b.shares[2] == std::vector<Symbol>{2});

  // Zero tape degenerates to the constant polynomial.
  ShareBundle c = encode(p, {2}, {0});
  CHECK(c.shares[0] == std::vector<Symbol>{2});
  CHECK(c.shares[1] == std::vector<Symbol>{2});
  CHECK(c.shares[2] == std::vector<Symbol>{2});
}

TEST_CASE("the fourth GF(4) server evaluates at infinity") {
  // t=3, z=1, L=4=q: f(x) = s1 + s2 x + r x^2; server 4's share is r itself.
  const RampParams p = gf4_params(4, 3, 1);

  ShareBundle b = encode(p, {1, 2}, {3});
  CHECK(b.shares[0] == std::vector<Symbol>{0});
  CHECK(b.shares[1] == std::vector<Symbol>{0});
  CHECK(b.shares[2] == std::vector<Symbol>{1});
  CHECK(b.shares[3] == std::vector<Symbol>{3});

  ShareBundle c = encode(p, {2, 3}, {1});
  CHECK(c.shares[0] == std::vector<Symbol>{0});
  CHECK(c.shares[1] == std::vector<Symbol>{0});
  CHECK(c.shares[2] == std::vector<Symbol>{2});
  CHECK(c.shares[3] == std::vector<Symbol>{1});

  // Decoding through the infinity share works like any other subset.
  const std::vector<Symbol> secret = ramp_decode(
      p, {{2, {0}}, {3, {1}}, {4, {3}}});
  CHECK(secret == std::vector<Symbol>{1, 2});
}

TEST_CASE("decode recovers known secrets") {
  const RampParams p = gf4_params(3, 2, 1);
  CHECK(ramp_decode(p, {{1, {0}}, {2, {3}}}) == std::vector<Symbol>{1});
  CHECK(ramp_decode(p, {{2, {3}}, {3, {2}}}) == std::vector<Symbol>{1});
}

TEST_CASE("every t-subset decodes every (secret, tape) pair exactly") {
  const RampParams p = gf4_params(3, 2, 1);
  const std::array<std::array<unsigned, 2>, 3> subsets = {
      {{1, 2}, {1, 3}, {2, 3}}};
  for (Symbol s = 0; s < 4; ++s) {
    for (Symbol r = 0; r < 4; ++r) {
      const ShareBundle b = encode(p, {s}, {r});
      for (const auto& subset : subsets) {
        const std::vector<Symbol> got = ramp_decode(
            p, {{subset[0], b.shares[subset[0] - 1]},
                {subset[1], b.shares[subset[1] - 1]}});
        CHECK(got == std::vector<Symbol>{s});
      }
      // All three shares together must agree as well.
      CHECK(ramp_decode(p, {{1, b.shares[0]},
                            {2, b.shares[1]},
                            {3, b.shares[2]}}) == std::vector<Symbol>{s});
    }
  }
}

TEST_CASE("redundant shares are consistency-checked") {
  const RampParams p = gf4_params(3, 2, 1);
  ShareBundle b = encode(p, {1}, {1});  // shares [0, 3, 2]

  SUBCASE("a tampered extra share is flagged") {
    b.shares[2][0] ^= 1;
    expect_error(ErrorCode::corruption, [&] {
      (void)ramp_decode(
          p, {{1, b.shares[0]}, {2, b.shares[1]}, {3, b.shares[2]}});
    });
  }
  SUBCASE("a tampered interpolation share is caught by the extras") {
    b.shares[0][0] ^= 2;
    expect_error(ErrorCode::corruption, [&] {
      (void)ramp_decode(
          p, {{1, b.shares[0]}, {2, b.shares[1]}, {3, b.shares[2]}});
    });
  }
}

TEST_CASE("decode validates its inputs") {
  const RampParams p = gf4_params(3, 2, 1);
  expect_error(ErrorCode::insufficient_shares,
               [&] { (void)ramp_decode(p, {{1, {0}}}); });
  expect_error(ErrorCode::parameter,
               [&] { (void)ramp_decode(p, {{1, {0}}, {1, {0}}}); });
  expect_error(ErrorCode::parameter,
               [&] { (void)ramp_decode(p, {{1, {0}}, {4, {0}}}); });
  expect_error(ErrorCode::parameter,
               [&] { (void)ramp_decode(p, {{1, {0}}, {2, {0, 1}}}); });
  expect_error(ErrorCode::parameter,
               [&] { (void)ramp_decode(p, {{1, {}}, {2, {}}}); });
}

TEST_CASE("encode validates its inputs") {
  const RampParams wide = gf4_params(4, 3, 1);  // block length 2
  expect_error(ErrorCode::parameter, [&] {
    (void)encode(wide, {1}, {0});  // not a multiple of t-z
  });
  expect_error(ErrorCode::parameter, [&] {
    (void)encode(wide, {1, 2}, {0, 0});  // tape too long
  });
  expect_error(ErrorCode::domain, [&] { (void)encode(wide, {1, 4}, {0}); });
  expect_error(ErrorCode::domain, [&] {
    (void)RandomTape::from_symbols(FieldSpec::get(2), {4});
  });
}

TEST_CASE("a single share is statistically independent of the secret") {
  // t=2, z=1 over GF(4): for every observed value of share 1, each secret
  // value is produced by exactly one tape symbol, so the conditional
  // distribution of the secret is uniform.
  const RampParams p = gf4_params(3, 2, 1);
  int counts[4][4] = {};
  for (Symbol s = 0; s < 4; ++s) {
    for (Symbol r = 0; r < 4; ++r) {
      const ShareBundle b = encode(p, {s}, {r});
      counts[b.shares[0][0]][s]++;
    }
  }
  for (int v = 0; v < 4; ++v) {
    for (int s = 0; s < 4; ++s) {
      CHECK(counts[v][s] == 1);
    }
  }
}

TEST_CASE("subset leakage follows the ramp profile") {
  // t=3, z=1 over GF(4), one block of 2 secret symbols (4 bits total).
  const RampParams p = gf4_params(4, 3, 1);
  CHECK(pfs::ramp_subset_leakage_bits(p, 0, 2) == 0);
  CHECK(pfs::ramp_subset_leakage_bits(p, 1, 2) == 0);
  CHECK(pfs::ramp_subset_leakage_bits(p, 2, 2) == 2);
  CHECK(pfs::ramp_subset_leakage_bits(p, 3, 2) == 4);
  // Sizes beyond t cannot reveal more than everything.
  CHECK(pfs::ramp_subset_leakage_bits(p, 4, 2) == 4);

  // Two blocks double the counts.
  CHECK(pfs::ramp_subset_leakage_bits(p, 2, 4) == 4);
  expect_error(ErrorCode::parameter,
               [&] { (void)pfs::ramp_subset_leakage_bits(p, 2, 3); });
}

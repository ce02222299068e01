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

#include <algorithm>
#include <string>

#include "pfs/errors.hpp"

namespace pfs {

void RampParams::validate() const {
  if (field == nullptr) {
    fail(ErrorCode::parameter, "ramp parameters need a field");
  }
  if (privacy == 0) {
    fail(ErrorCode::parameter, "privacy z must be positive");
  }
  if (threshold <= privacy) {
    fail(ErrorCode::parameter,
         "threshold t=" + std::to_string(threshold) +
             " must exceed privacy z=" + std::to_string(privacy));
  }
  if (servers < threshold) {
    fail(ErrorCode::parameter, "need at least t=" + std::to_string(threshold) +
                                   " servers, got L=" + std::to_string(servers));
  }
  if (servers > field->order()) {
    fail(ErrorCode::parameter,
         "L=" + std::to_string(servers) + " servers need distinct evaluation " +
             "points, but GF(2^" + std::to_string(field->m()) + ") offers at " +
             "most " + std::to_string(field->order()) +
             " (the nonzero elements plus the point at infinity)");
  }
}

bool RampParams::at_infinity(unsigned server_id) const {
  return server_id == field->order();
}

std::size_t RampParams::share_len(std::size_t secret_len) const {
  return secret_len / block_len();
}

std::size_t RampParams::tape_len(std::size_t secret_len) const {
  return share_len(secret_len) * privacy;
}

RandomTape RandomTape::draw(const FieldSpec& field, std::size_t count,
                            SymbolRng& rng) {
  RandomTape tape;
  tape.symbols = rng.draw(field, count);
  return tape;
}

RandomTape RandomTape::from_symbols(const FieldSpec& field,
                                    std::vector<Symbol> symbols) {
  for (Symbol s : symbols) field.check_symbol(s);
  RandomTape tape;
  tape.symbols = std::move(symbols);
  return tape;
}

void ramp_encode_into(const RampParams& params, std::span<const Symbol> secret,
                      std::span<const Symbol> tape,
                      std::span<std::vector<Symbol>> out) {
  params.validate();
  const FieldSpec& f = *params.field;
  const unsigned z = params.privacy;
  const unsigned block = params.block_len();

  if (secret.empty() || secret.size() % block != 0) {
    fail(ErrorCode::parameter,
         "secret length " + std::to_string(secret.size()) +
             " is not a positive multiple of t-z=" + std::to_string(block));
  }
  const std::size_t blocks = secret.size() / block;
  if (tape.size() != blocks * z) {
    fail(ErrorCode::parameter,
         "tape holds " + std::to_string(tape.size()) + " symbols but encoding needs " +
             std::to_string(blocks * z));
  }
  if (out.size() != params.servers) {
    fail(ErrorCode::usage, "output span must hold one share per server");
  }
  for (Symbol s : secret) f.check_symbol(s);
  for (Symbol s : tape) f.check_symbol(s);

  for (unsigned l = 1; l <= params.servers; ++l) {
    auto& share = out[l - 1];
    share.resize(blocks);
    if (params.at_infinity(l)) {
      // The extended evaluation point: the share at infinity is the leading
      // coefficient x^{t-1}, which is the block's last tape symbol -- pure
      // randomness, so this share alone reveals nothing.
      for (std::size_t b = 0; b < blocks; ++b) {
        share[b] = tape[b * z + (z - 1)];
      }
      continue;
    }
    const Symbol x = f.element(l);
    for (std::size_t b = 0; b < blocks; ++b) {
      // Horner evaluation of the block polynomial: coefficients are the
      // block's t-z secret symbols followed by its z tape symbols.
      Symbol acc = tape[b * z + (z - 1)];
      for (unsigned j = z - 1; j-- > 0;) {
        acc = f.add(f.mul(acc, x), tape[b * z + j]);
      }
      for (unsigned j = block; j-- > 0;) {
        acc = f.add(f.mul(acc, x), secret[b * block + j]);
      }
      share[b] = acc;
    }
  }
}

ShareBundle ramp_encode(const RampParams& params, std::span<const Symbol> secret,
                        const RandomTape& tape) {
  params.validate();
  ShareBundle bundle;
  bundle.params = params;
  bundle.shares.resize(params.servers);
  ramp_encode_into(params, secret, tape.symbols, bundle.shares);
  return bundle;
}

std::vector<Symbol> ramp_decode(
    const RampParams& params,
    const std::vector<std::pair<unsigned, std::vector<Symbol>>>& shares) {
  params.validate();
  const FieldSpec& f = *params.field;
  const unsigned t = params.threshold;
  const unsigned block = params.block_len();

  std::vector<std::pair<unsigned, const std::vector<Symbol>*>> sorted;
  sorted.reserve(shares.size());
  for (const auto& [id, symbols] : shares) {
    if (id < 1 || id > params.servers) {
      fail(ErrorCode::parameter, "share from unknown server " + std::to_string(id));
    }
    sorted.emplace_back(id, &symbols);
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].first == sorted[i - 1].first) {
      fail(ErrorCode::parameter,
           "duplicate share from server " + std::to_string(sorted[i].first));
    }
  }
  if (sorted.size() < t) {
    fail(ErrorCode::insufficient_shares,
         "reconstruction needs t=" + std::to_string(t) + " shares, got " +
             std::to_string(sorted.size()));
  }

  const std::size_t blocks = sorted.front().second->size();
  if (blocks == 0) {
    fail(ErrorCode::parameter, "shares are empty");
  }
  for (const auto& [id, symbols] : sorted) {
    if (symbols->size() != blocks) {
      fail(ErrorCode::parameter, "share lengths disagree");
    }
    for (Symbol s : *symbols) f.check_symbol(s);
  }

  // Interpolate from the lexicographically first t server ids: solve the
  // t x t Vandermonde system V c = y per block, where row i is
  // (1, x_i, ..., x_i^{t-1}) at x_i = element(server id), except that the
  // server at the infinity point contributes the unit row selecting the
  // leading coefficient.  Any t such rows are independent: expanding along
  // the infinity row leaves a classic Vandermonde on distinct nonzero points.
  Matrix vand;
  vand.reserve(t);
  for (unsigned i = 0; i < t; ++i) {
    std::vector<FieldElement> row;
    row.reserve(t);
    if (params.at_infinity(sorted[i].first)) {
      for (unsigned j = 0; j < t; ++j) {
        row.emplace_back(f, static_cast<Symbol>(j == t - 1 ? 1 : 0));
      }
    } else {
      const Symbol x = f.element(sorted[i].first);
      Symbol p = 1;
      for (unsigned j = 0; j < t; ++j) {
        row.emplace_back(f, p);
        p = f.mul(p, x);
      }
    }
    vand.push_back(std::move(row));
  }

  std::vector<Symbol> secret(blocks * block);
  std::vector<FieldElement> rhs;
  std::vector<std::vector<Symbol>> coeffs(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    rhs.clear();
    for (unsigned i = 0; i < t; ++i) {
      rhs.emplace_back(f, (*sorted[i].second)[b]);
    }
    const std::vector<FieldElement> c = solve_linear(vand, rhs);
    coeffs[b].resize(t);
    for (unsigned j = 0; j < t; ++j) coeffs[b][j] = c[j].value();
    for (unsigned j = 0; j < block; ++j) {
      secret[b * block + j] = c[j].value();
    }
  }

  // Shares beyond the first t are redundant; verify them against the
  // interpolated polynomials so silent corruption cannot slip through.
  for (std::size_t extra = t; extra < sorted.size(); ++extra) {
    const bool infinity = params.at_infinity(sorted[extra].first);
    const Symbol x = infinity ? 0 : f.element(sorted[extra].first);
    for (std::size_t b = 0; b < blocks; ++b) {
      Symbol acc = coeffs[b][t - 1];
      if (!infinity) {
        for (unsigned j = t - 1; j-- > 0;) {
          acc = f.add(f.mul(acc, x), coeffs[b][j]);
        }
      }
      if (acc != (*sorted[extra].second)[b]) {
        fail(ErrorCode::corruption,
             "share from server " + std::to_string(sorted[extra].first) +
                 " is inconsistent with the others (block " + std::to_string(b) +
                 ")");
      }
    }
  }

  return secret;
}

std::uint64_t ramp_subset_leakage_bits(const RampParams& params,
                                       unsigned subset_size,
                                       std::size_t secret_len) {
  params.validate();
  if (secret_len == 0 || secret_len % params.block_len() != 0) {
    fail(ErrorCode::parameter,
         "secret length " + std::to_string(secret_len) +
             " is not a positive multiple of t-z");
  }
  const unsigned capped = std::min(subset_size, params.threshold);
  if (capped <= params.privacy) return 0;
  // (i-z) of every block's t-z secret coordinates, m bits each.
  const std::uint64_t revealed_coords = capped - params.privacy;
  return revealed_coords * (secret_len / params.block_len()) * params.field->m();
}

}  // namespace pfs

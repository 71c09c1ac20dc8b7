// Copyright 2026 The witbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "witbench/merkle/binary_tree.hpp"

namespace witbench {

enum class SizeScheme { naive_merkle, verkle, snark_merkle };

inline const char* to_string(SizeScheme s) {
  switch (s) {
    case SizeScheme::naive_merkle: return "naive-merkle";
    case SizeScheme::verkle: return "verkle";
    case SizeScheme::snark_merkle: return "snark-merkle";
  }
  return "?";
}

inline std::optional<SizeScheme> parse_size_scheme(std::string_view s) {
  for (auto v : {SizeScheme::naive_merkle, SizeScheme::verkle, SizeScheme::snark_merkle}) {
    if (s == to_string(v)) return v;
  }
  return std::nullopt;
}

/// Inputs of the analytic witness-size formulas. Fields a scheme does not
/// use are ignored.
struct SizeModel {
  SizeScheme scheme = SizeScheme::verkle;
  std::uint64_t keys = 5000;  // K
  std::uint64_t key_bytes = 32;
  std::uint64_t value_bytes = 32;
  // verkle
  std::uint64_t commitments = 10000;  // C
  std::uint64_t commitment_bytes = 48;
  std::uint64_t multiproof_bytes = 200;
  // snark-merkle
  std::uint64_t proof_bytes = 192;
  /// One branch per key before and one after execution.
  bool pre_post = true;
  // naive-merkle
  std::uint64_t hash_bytes = 32;
  std::uint64_t arity = 2;
  std::uint64_t leaf_count = std::uint64_t(1) << 32;
};

struct SizeComponent {
  std::string name;
  std::uint64_t bytes = 0;
};

struct SizeEstimate {
  std::uint64_t total = 0;
  std::vector<SizeComponent> breakdown;
};

/// verkle:       K * (key + value) + C * commitment + multiproof
/// snark-merkle: B * (proof + key + value), B = 2K with pre_post, else K
/// naive-merkle: naive_witness_size(K, hash, arity, leaf_count)
/// Throws std::invalid_argument on a zero size field the scheme uses.
inline SizeEstimate estimate(const SizeModel& m) {
  auto positive = [](std::uint64_t v, const char* what) {
    if (v == 0) throw std::invalid_argument(std::string("size model: ") + what + " must be positive");
  };
  SizeEstimate out;
  switch (m.scheme) {
    case SizeScheme::verkle:
      positive(m.key_bytes, "key_bytes");
      positive(m.value_bytes, "value_bytes");
      positive(m.commitment_bytes, "commitment_bytes");
      positive(m.multiproof_bytes, "multiproof_bytes");
      out.breakdown = {{"leaves", m.keys * (m.key_bytes + m.value_bytes)},
                       {"commitments", m.commitments * m.commitment_bytes},
                       {"multiproof", m.multiproof_bytes}};
      break;
    case SizeScheme::snark_merkle: {
      positive(m.key_bytes, "key_bytes");
      positive(m.value_bytes, "value_bytes");
      positive(m.proof_bytes, "proof_bytes");
      const std::uint64_t branches = (m.pre_post ? 2 : 1) * m.keys;
      out.breakdown = {{"proofs", branches * m.proof_bytes}, {"leaves", branches * (m.key_bytes + m.value_bytes)}};
      break;
    }
    case SizeScheme::naive_merkle:
      positive(m.hash_bytes, "hash_bytes");
      out.breakdown = {{"siblings", naive_witness_size(m.keys, m.hash_bytes, m.arity, m.leaf_count)}};
      break;
  }
  for (const auto& c : out.breakdown) out.total += c.bytes;
  return out;
}

}  // namespace witbench

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
#include <string_view>
#include <vector>

namespace witbench::bench {

enum class Scheme { verkle, merkle_naive, merkle_snark };

inline const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::verkle: return "verkle";
    case Scheme::merkle_naive: return "merkle-naive";
    case Scheme::merkle_snark: return "merkle-snark";
  }
  return "?";
}

inline std::optional<Scheme> parse_scheme(std::string_view s) {
  for (auto v : {Scheme::verkle, Scheme::merkle_naive, Scheme::merkle_snark}) {
    if (s == to_string(v)) return v;
  }
  return std::nullopt;
}

struct BenchConfig {
  Scheme scheme = Scheme::verkle;
  unsigned min_log_leaves = 5;
  unsigned max_log_leaves = 16;
  std::uint64_t keys = 5000;
  unsigned reps = 10;
  std::uint64_t seed = 1;
  /// Wall-clock limit for one repetition (prove plus verify), seconds.
  double time_budget_s = 600;
  /// Limit on the analytic peak-memory estimate, bytes.
  std::uint64_t mem_budget_bytes = std::uint64_t(4) << 30;
  /// Repetitions run concurrently; 1 keeps timings single-threaded.
  unsigned parallel = 1;

  static constexpr unsigned kMaxLogLeaves = 32;

  void validate() const {
    if (keys < 1) throw std::invalid_argument("keys must be at least 1");
    if (reps < 1) throw std::invalid_argument("reps must be at least 1");
    if (parallel < 1) throw std::invalid_argument("parallel must be at least 1");
    if (min_log_leaves < 1 || max_log_leaves > kMaxLogLeaves || min_log_leaves > max_log_leaves) {
      throw std::invalid_argument("leaf range must satisfy 1 <= min <= max <= 32");
    }
    if (!(time_budget_s > 0)) throw std::invalid_argument("time budget must be positive");
    if (mem_budget_bytes == 0) throw std::invalid_argument("memory budget must be positive");
  }

  /// Leaf counts 2^e for e in [min, max]: every e up to 13, then only even e.
  std::vector<std::uint64_t> schedule() const {
    std::vector<std::uint64_t> out;
    for (unsigned e = min_log_leaves; e <= max_log_leaves; ++e) {
      if (e <= 13 || e % 2 == 0) out.push_back(std::uint64_t(1) << e);
    }
    return out;
  }
};

}  // namespace witbench::bench

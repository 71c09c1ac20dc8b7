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

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "witbench/algebra/field.hpp"
#include "witbench/algebra/hash.hpp"

namespace witbench {

/// Width-3 Poseidon-style permutation over Fr.
///
/// Parameters are demonstration grade and not compatible with any external
/// library: x^7 S-box, 4 full rounds, 57 partial rounds, 4 full rounds.
/// Round constant (round, i) is SHA-256("witbench.poseidon.rc" || u32le round
/// || u32le i) reduced mod r; the mixing matrix is the Cauchy matrix
/// M[i][j] = 1 / (i + j + 3).
class Poseidon {
 public:
  static constexpr std::size_t kWidth = 3;
  static constexpr unsigned kAlpha = 7;
  static constexpr std::size_t kFullRounds = 8;
  static constexpr std::size_t kPartialRounds = 57;
  static constexpr std::size_t kRounds = kFullRounds + kPartialRounds;

  using State = std::array<Fr, kWidth>;
  using Matrix = std::array<std::array<Fr, kWidth>, kWidth>;

  static const Poseidon& instance() {
    static const Poseidon p;
    return p;
  }

  static constexpr bool is_full_round(std::size_t round) {
    return round < kFullRounds / 2 || round >= kFullRounds / 2 + kPartialRounds;
  }

  const State& round_constants(std::size_t round) const { return rc_[round]; }
  const Matrix& mds() const { return mds_; }

  static Fr sbox(const Fr& x) {
    Fr x2 = x.square();
    Fr x4 = x2.square();
    return x4 * x2 * x;
  }

  State mix(const State& s) const {
    State out;
    for (std::size_t i = 0; i < kWidth; ++i) out[i] = mds_[i][0] * s[0] + mds_[i][1] * s[1] + mds_[i][2] * s[2];
    return out;
  }

  void permute(State& s) const {
    for (std::size_t round = 0; round < kRounds; ++round) {
      for (std::size_t i = 0; i < kWidth; ++i) s[i] = s[i] + rc_[round][i];
      if (is_full_round(round)) {
        for (auto& x : s) x = sbox(x);
      } else {
        s[0] = sbox(s[0]);
      }
      s = mix(s);
    }
  }

  /// Two-to-one compression: permute (0, a, b) and keep element 1.
  Fr hash2(const Fr& a, const Fr& b) const {
    State s{Fr::zero(), a, b};
    permute(s);
    return s[1];
  }

 private:
  Poseidon() {
    rc_.resize(kRounds);
    for (std::size_t round = 0; round < kRounds; ++round) {
      for (std::size_t i = 0; i < kWidth; ++i) rc_[round][i] = derive_constant(round, i);
    }
    for (std::size_t i = 0; i < kWidth; ++i) {
      for (std::size_t j = 0; j < kWidth; ++j) mds_[i][j] = Fr::from_u64(i + j + 3).inverse();
    }
  }

  static Fr derive_constant(std::size_t round, std::size_t i) {
    std::uint8_t idx[8];
    for (int k = 0; k < 4; ++k) {
      idx[k] = std::uint8_t(round >> (8 * k));
      idx[4 + k] = std::uint8_t(i >> (8 * k));
    }
    Digest d = Sha256().update(std::string_view("witbench.poseidon.rc")).update(std::span<const std::uint8_t>(idx, 8)).finalize();
    return Fr::from_bytes_reduce(d);
  }

  std::vector<State> rc_;
  Matrix mds_;
};

inline Fr hash2(const Fr& a, const Fr& b) { return Poseidon::instance().hash2(a, b); }

}  // namespace witbench

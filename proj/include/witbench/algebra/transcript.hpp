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
#include <span>
#include <string_view>

#include "witbench/algebra/field.hpp"
#include "witbench/algebra/group.hpp"
#include "witbench/algebra/hash.hpp"

namespace witbench {

/// Fiat-Shamir transcript over SHA-256.
///
/// Every absorb writes len(label) || label || len(data) || data (lengths as
/// u64 little-endian), so distinct absorb sequences never hash the same byte
/// string. A challenge hashes the running state twice with distinct suffixes,
/// reduces the 512-bit result into Fr and absorbs it back.
class Transcript {
 public:
  explicit Transcript(std::string_view domain) { absorb_bytes("domain", as_bytes(domain)); }

  void absorb_bytes(std::string_view label, std::span<const std::uint8_t> data) {
    state_.update_u64(label.size()).update(label);
    state_.update_u64(data.size()).update(data);
  }

  void absorb(std::string_view label, const Fr& v) {
    auto b = v.to_bytes();
    absorb_bytes(label, b);
  }

  void absorb(std::string_view label, const GroupElement& p) {
    auto b = p.to_bytes();
    absorb_bytes(label, b);
  }

  void absorb_encoded_point(std::string_view label, std::span<const std::uint8_t> encoded) {
    absorb_bytes(label, encoded);
  }

  void absorb_u64(std::string_view label, std::uint64_t v) {
    std::uint8_t b[8];
    for (int i = 0; i < 8; ++i) b[i] = std::uint8_t(v >> (8 * i));
    absorb_bytes(label, std::span<const std::uint8_t>(b, 8));
  }

  Fr challenge(std::string_view label) {
    state_.update_u64(label.size()).update(label);
    std::array<std::uint8_t, 64> wide;
    Sha256 lo = state_;
    Sha256 hi = state_;
    Digest a = lo.update(std::string_view("\x00", 1)).finalize();
    Digest b = hi.update(std::string_view("\x01", 1)).finalize();
    std::copy(a.begin(), a.end(), wide.begin());
    std::copy(b.begin(), b.end(), wide.begin() + 32);
    Fr c = Fr::from_wide_bytes(wide);
    absorb(label, c);
    return c;
  }

 private:
  static std::span<const std::uint8_t> as_bytes(std::string_view s) {
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
  }

  Sha256 state_;
};

}  // namespace witbench

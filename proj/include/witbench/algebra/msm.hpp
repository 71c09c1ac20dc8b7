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

#include <bit>
#include <span>
#include <stdexcept>
#include <vector>

#include "witbench/algebra/field.hpp"
#include "witbench/algebra/group.hpp"

namespace witbench {

/// Sum of scalars[i] * bases[i] (bucket method). Throws std::invalid_argument
/// on a length mismatch.
inline GroupElement msm(std::span<const Fr> scalars, std::span<const GroupElement> bases) {
  if (scalars.size() != bases.size()) throw std::invalid_argument("msm: length mismatch");
  const std::size_t n = scalars.size();
  if (n == 0) return GroupElement::identity();
  if (n < 8) {
    GroupElement acc;
    for (std::size_t i = 0; i < n; ++i) {
      if (!scalars[i].is_zero()) acc += bases[i].mul(scalars[i]);
    }
    return acc;
  }

  const unsigned c = std::min(16u, std::max(3u, unsigned(std::bit_width(n)) - 3));
  std::vector<std::vector<int>> digits(n);
  for (std::size_t i = 0; i < n; ++i) digits[i] = GroupElement::signed_digits(scalars[i].to_limbs(), c);
  const std::size_t windows = digits[0].size();
  const std::size_t nbuckets = std::size_t(1) << (c - 1);

  GroupElement result;
  std::vector<GroupElement> buckets(nbuckets);
  for (std::size_t w = windows; w-- > 0;) {
    for (unsigned j = 0; j < c; ++j) result = result.dbl();
    std::fill(buckets.begin(), buckets.end(), GroupElement::identity());
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      int d = digits[i][w];
      if (d > 0) {
        buckets[d - 1] += bases[i];
        any = true;
      } else if (d < 0) {
        buckets[-d - 1] -= bases[i];
        any = true;
      }
    }
    if (!any) continue;
    GroupElement running, window_sum;
    for (std::size_t b = nbuckets; b-- > 0;) {
      running += buckets[b];
      window_sum += running;
    }
    result += window_sum;
  }
  return result;
}

/// Precomputed multiples of one base for fast fixed-base multiplication:
/// entry [w][j] = (j+1) * 2^(kWindow*w) * base, digits signed in (-128, 128].
class FixedBaseTable {
 public:
  static constexpr unsigned kWindow = 8;
  static constexpr unsigned kEntries = 1u << (kWindow - 1);
  static constexpr unsigned kWindows = (256 + kWindow - 1) / kWindow + 1;

  FixedBaseTable() = default;

  /// Heap bytes held by one table.
  static constexpr std::size_t table_bytes() { return std::size_t(kWindows) * kEntries * sizeof(AffineNiels); }

  explicit FixedBaseTable(const GroupElement& base) {
    std::vector<GroupElement> pts;
    pts.reserve(kWindows * kEntries);
    GroupElement b = base;
    for (unsigned w = 0; w < kWindows; ++w) {
      GroupElement acc = b;
      for (unsigned j = 0; j < kEntries; ++j) {
        pts.push_back(acc);
        acc += b;
      }
      for (unsigned j = 0; j < kWindow; ++j) b = b.dbl();
    }
    table_ = GroupElement::batch_to_niels(pts);
  }

  /// acc += k * base.
  void accumulate(GroupElement& acc, const Fr& k) const { accumulate_digits(acc, digits(k)); }

  void accumulate_digits(GroupElement& acc, const std::vector<int>& ds) const {
    for (unsigned w = 0; w < kWindows; ++w) {
      int d = ds[w];
      if (d > 0) acc = acc.add_niels(table_[w * kEntries + unsigned(d - 1)]);
      if (d < 0) acc = acc.sub_niels(table_[w * kEntries + unsigned(-d - 1)]);
    }
  }

  GroupElement mul(const Fr& k) const {
    GroupElement acc;
    accumulate(acc, k);
    return acc;
  }

  static std::vector<int> digits(const Fr& k) { return GroupElement::signed_digits(k.to_limbs(), kWindow); }

 private:
  std::vector<AffineNiels> table_;
};

}  // namespace witbench

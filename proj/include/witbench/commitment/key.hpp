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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "witbench/algebra/field.hpp"
#include "witbench/algebra/group.hpp"
#include "witbench/algebra/msm.hpp"
#include "witbench/algebra/polynomial.hpp"

namespace witbench {

/// A group element together with its cached 48-byte encoding.
class Commitment {
 public:
  static constexpr std::size_t kBytes = GroupElement::kBytes;
  using Encoding = std::array<std::uint8_t, kBytes>;

  Commitment() : bytes_(GroupElement::identity().to_bytes()) {}
  explicit Commitment(const GroupElement& p) : point_(p), bytes_(p.to_bytes()) {}
  Commitment(const GroupElement& p, const Encoding& b) : point_(p), bytes_(b) {}

  static std::optional<Commitment> from_bytes(std::span<const std::uint8_t> b) {
    auto p = GroupElement::from_bytes(b);
    if (!p) return std::nullopt;
    Encoding e;
    std::copy(b.begin(), b.end(), e.begin());
    return Commitment(*p, e);
  }

  /// Encodes many points with a single field inversion.
  static std::vector<Commitment> from_points(std::span<const GroupElement> points) {
    auto enc = GroupElement::batch_to_bytes(points);
    std::vector<Commitment> out;
    out.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) out.emplace_back(points[i], enc[i]);
    return out;
  }

  const GroupElement& point() const { return point_; }
  const Encoding& bytes() const { return bytes_; }

  friend bool operator==(const Commitment& a, const Commitment& b) { return a.bytes_ == b.bytes_; }
  friend bool operator<(const Commitment& a, const Commitment& b) { return a.bytes_ < b.bytes_; }

 private:
  GroupElement point_;
  Encoding bytes_;
};

/// Pedersen vector-commitment key: 256 bases and an auxiliary point Q, all
/// derived by hash-to-group from a seed string. Holds a fixed-base table per
/// base (about 104 MB in all) so commitments cost only mixed additions.
class CommitmentKey {
 public:
  static constexpr std::size_t kWidth = 256;

  explicit CommitmentKey(std::string seed) : seed_(std::move(seed)) {
    bases_.reserve(kWidth);
    for (std::size_t i = 0; i < kWidth; ++i) bases_.push_back(GroupElement::hash_to_group(seed_, i));
    q_ = GroupElement::hash_to_group(seed_, kWidth);
    tables_.reserve(kWidth);
    for (const auto& b : bases_) tables_.emplace_back(b);
  }

  /// Shared key used by the Verkle tree.
  static const CommitmentKey& default_key() {
    static const CommitmentKey key("witbench.verkle.crs.v1");
    return key;
  }

  const std::string& seed() const { return seed_; }
  std::span<const GroupElement> bases() const { return bases_; }
  const GroupElement& base(std::size_t i) const { return bases_[i]; }
  const GroupElement& q() const { return q_; }
  const EvaluationDomain& domain() const { return EvaluationDomain::verkle(); }

  /// sum_i values[i] * base_i. Throws std::invalid_argument unless 256 values.
  GroupElement commit_point(std::span<const Fr> values) const {
    if (values.size() != kWidth) throw std::invalid_argument("commit: expected 256 evaluations");
    GroupElement acc;
    for (std::size_t i = 0; i < kWidth; ++i) {
      if (!values[i].is_zero()) tables_[i].accumulate(acc, values[i]);
    }
    return acc;
  }

  /// Sparse variant: (slot, value) pairs, slots < 256.
  GroupElement commit_sparse(std::span<const std::pair<std::uint8_t, Fr>> slots) const {
    GroupElement acc;
    for (const auto& [i, v] : slots) {
      if (!v.is_zero()) tables_[i].accumulate(acc, v);
    }
    return acc;
  }

  Commitment commit(const Polynomial& poly) const { return Commitment(commit_point(poly.evaluations())); }

 private:
  std::string seed_;
  std::vector<GroupElement> bases_;
  GroupElement q_;
  std::vector<FixedBaseTable> tables_;
};

}  // namespace witbench

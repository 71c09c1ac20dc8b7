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

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "witbench/algebra/field.hpp"
#include "witbench/bytes.hpp"
#include "witbench/merkle/poseidon.hpp"

namespace witbench {

/// Sibling path for one leaf, bottom-up. Bit i of `index` (LSB first) says
/// whether the running node is the right child at height i.
struct MerkleBranch {
  std::uint64_t index = 0;
  Fr leaf;
  std::vector<Fr> siblings;

  std::size_t depth() const { return siblings.size(); }
  std::size_t size_bytes() const { return 8 + Fr::kBytes * (1 + siblings.size()); }

  /// index (u64 LE) || leaf || siblings.
  Bytes serialize() const {
    Bytes out;
    out.reserve(size_bytes());
    ByteWriter w(out);
    w.u64(index);
    w.field(leaf);
    for (const auto& s : siblings) w.field(s);
    return out;
  }

  /// The depth is implied by the length; nullopt on a ragged tail or a
  /// non-canonical field element.
  static std::optional<MerkleBranch> parse(std::span<const std::uint8_t> in) {
    if (in.size() < 8 + Fr::kBytes || (in.size() - 8) % Fr::kBytes != 0) return std::nullopt;
    ByteReader rd(in);
    MerkleBranch b;
    b.index = *rd.u64();
    auto leaf = rd.field();
    if (!leaf) return std::nullopt;
    b.leaf = *leaf;
    while (!rd.done()) {
      auto s = rd.field();
      if (!s) return std::nullopt;
      b.siblings.push_back(*s);
    }
    return b;
  }
};

/// Root obtained by folding the leaf up the path.
inline Fr fold_branch(const MerkleBranch& b) {
  Fr cur = b.leaf;
  for (std::size_t i = 0; i < b.siblings.size(); ++i) {
    cur = (b.index >> i) & 1 ? hash2(b.siblings[i], cur) : hash2(cur, b.siblings[i]);
  }
  return cur;
}

/// `malformed` when the path length differs from `depth` or the index does
/// not fit in `depth` bits.
inline Verdict verify_branch(const Fr& root, const MerkleBranch& b, std::size_t depth) {
  if (depth == 0 || depth > 64 || b.siblings.size() != depth) return Verdict::malformed;
  if (depth < 64 && (b.index >> depth) != 0) return Verdict::malformed;
  return fold_branch(b) == root ? Verdict::accept : Verdict::reject;
}

/// Sparse binary Merkle tree of fixed depth over hash2. Unset leaves are
/// zero and empty subtrees hash to a precomputed default chain.
///
/// Leaf writes are buffered; root() and branch() first rehash every node
/// above a written leaf, once per node. Concurrent reads are safe only on a
/// clean tree (see dirty()).
class BinaryMerkleTree {
 public:
  static constexpr std::size_t kMaxDepth = 64;

  explicit BinaryMerkleTree(std::size_t depth) : depth_(depth) {
    if (depth == 0 || depth > kMaxDepth) throw std::invalid_argument("merkle depth must be in [1, 64]");
    nodes_.resize(depth + 1);
    defaults_.push_back(Fr::zero());
    for (std::size_t i = 0; i < depth; ++i) defaults_.push_back(hash2(defaults_[i], defaults_[i]));
  }

  std::size_t depth() const { return depth_; }
  std::size_t leaf_count() const { return nodes_[0].size(); }
  bool dirty() const { return !pending_.empty(); }

  /// Hash of an empty subtree of the given height (0 = leaf).
  const Fr& default_hash(std::size_t height) const { return defaults_.at(height); }

  void set_leaf(std::uint64_t index, const Fr& value) {
    check_index(index);
    nodes_[0][index] = value;
    pending_.push_back(index);
  }

  Fr leaf(std::uint64_t index) const {
    check_index(index);
    return node(0, index);
  }

  const Fr& root() const {
    flush();
    return root_value();
  }

  MerkleBranch branch(std::uint64_t index) const {
    check_index(index);
    flush();
    MerkleBranch b;
    b.index = index;
    b.leaf = node(0, index);
    b.siblings.reserve(depth_);
    for (std::size_t h = 0; h < depth_; ++h) b.siblings.push_back(node(h, (index >> h) ^ 1));
    return b;
  }

 private:
  void check_index(std::uint64_t index) const {
    if (depth_ < 64 && (index >> depth_) != 0) throw std::out_of_range("merkle leaf index out of range");
  }

  Fr node(std::size_t height, std::uint64_t pos) const {
    auto it = nodes_[height].find(pos);
    return it == nodes_[height].end() ? defaults_[height] : it->second;
  }

  const Fr& root_value() const {
    auto it = nodes_[depth_].find(0);
    return it == nodes_[depth_].end() ? defaults_[depth_] : it->second;
  }

  void flush() const {
    if (pending_.empty()) return;
    std::vector<std::uint64_t> cur = std::move(pending_);
    pending_.clear();
    for (std::size_t h = 0; h < depth_; ++h) {
      for (auto& p : cur) p >>= 1;
      std::sort(cur.begin(), cur.end());
      cur.erase(std::unique(cur.begin(), cur.end()), cur.end());
      for (auto p : cur) nodes_[h + 1][p] = hash2(node(h, 2 * p), node(h, 2 * p + 1));
    }
  }

  std::size_t depth_;
  mutable std::vector<std::unordered_map<std::uint64_t, Fr>> nodes_;
  mutable std::vector<std::uint64_t> pending_;
  std::vector<Fr> defaults_;
};

/// Bytes of T classical branches of B-byte hashes in an arity-k tree over N
/// leaves: T * B * (k - 1) * ceil(log_k N), counting k - 1 siblings per
/// level. Throws std::invalid_argument when k < 2 or N < 1 and
/// std::overflow_error when the product does not fit in 64 bits.
inline std::uint64_t naive_witness_size(std::uint64_t T, std::uint64_t B, std::uint64_t k, std::uint64_t N) {
  if (k < 2) throw std::invalid_argument("arity must be at least 2");
  if (N < 1) throw std::invalid_argument("leaf count must be at least 1");
  std::uint64_t levels = 0;
  for (std::uint64_t cap = 1; cap < N; ++levels) {
    if (cap > N / k) {
      ++levels;
      break;
    }
    cap *= k;
  }
  std::uint64_t out = 1;
  for (std::uint64_t f : {T, B, k - 1, levels}) {
    if (__builtin_mul_overflow(out, f, &out)) throw std::overflow_error("naive witness size overflows");
  }
  return out;
}

}  // namespace witbench

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
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "witbench/algebra/transcript.hpp"
#include "witbench/bytes.hpp"
#include "witbench/commitment/multiproof.hpp"
#include "witbench/verkle/tree.hpp"

namespace witbench {

/// Proof that each queried key maps to a value or is absent.
///
/// Serialized layout, little-endian:
///   multiproof                 1 byte (empty sentinel) or 849 bytes
///   -- omitted entirely for a witness over zero keys --
///   u32 key count K, u32 commitment count C, u32 diverging-leaf count L
///   K x (key 32 || value 32)   value is all zero for absent keys
///   K x (depth u8 || status u8)
///   C x commitment (48)        internal nodes on the access paths, root
///                              excluded, ordered by path prefix
///   L x (key 32 || value 32)   leaves revealed to prove absence, by key
struct VerkleWitness {
  enum class Status : std::uint8_t { present = 0, absent_empty = 1, absent_other = 2 };

  struct LeafEntry {
    VerkleKey key;
    VerkleValue value;
    friend bool operator==(const LeafEntry&, const LeafEntry&) = default;
  };
  struct KeyMeta {
    std::uint8_t depth;  // depth of the node whose slot decides the key
    Status status;
    friend bool operator==(const KeyMeta&, const KeyMeta&) = default;
  };

  std::vector<LeafEntry> leaves;
  std::vector<KeyMeta> meta;
  std::vector<Commitment> path_commitments;
  std::vector<LeafEntry> other_leaves;
  MultiProof multiproof;

  bool has_body() const {
    return !multiproof.empty || !leaves.empty() || !path_commitments.empty() || !other_leaves.empty();
  }

  Bytes serialize() const {
    Bytes out;
    ByteWriter w(out);
    multiproof.write(w);
    if (!has_body()) return out;
    w.u32(std::uint32_t(leaves.size()));
    w.u32(std::uint32_t(path_commitments.size()));
    w.u32(std::uint32_t(other_leaves.size()));
    for (const auto& l : leaves) {
      w.bytes(l.key);
      w.bytes(l.value);
    }
    for (const auto& m : meta) {
      w.u8(m.depth);
      w.u8(std::uint8_t(m.status));
    }
    for (const auto& c : path_commitments) w.bytes(c.bytes());
    for (const auto& l : other_leaves) {
      w.bytes(l.key);
      w.bytes(l.value);
    }
    return out;
  }

  static std::optional<VerkleWitness> parse(std::span<const std::uint8_t> in) {
    ByteReader rd(in);
    VerkleWitness w;
    auto mp = MultiProof::read(rd);
    if (!mp) return std::nullopt;
    w.multiproof = std::move(*mp);
    if (rd.done()) return w;
    auto k = rd.u32(), c = rd.u32(), l = rd.u32();
    if (!k || !c || !l) return std::nullopt;
    // Reject counts the remaining bytes cannot hold before allocating.
    if (std::uint64_t(*k) * 66 + std::uint64_t(*c) * 48 + std::uint64_t(*l) * 64 != rd.remaining()) {
      return std::nullopt;
    }
    auto read_entry = [&](LeafEntry& e) {
      auto kb = rd.take(32);
      auto vb = rd.take(32);
      std::copy(kb->begin(), kb->end(), e.key.begin());
      std::copy(vb->begin(), vb->end(), e.value.begin());
    };
    w.leaves.resize(*k);
    for (auto& e : w.leaves) read_entry(e);
    w.meta.resize(*k);
    for (auto& m : w.meta) {
      m.depth = *rd.u8();
      std::uint8_t s = *rd.u8();
      if (s > 2) return std::nullopt;
      m.status = Status(s);
    }
    w.path_commitments.reserve(*c);
    for (std::uint32_t i = 0; i < *c; ++i) {
      auto com = Commitment::from_bytes(*rd.take(Commitment::kBytes));
      if (!com) return std::nullopt;
      w.path_commitments.push_back(*com);
    }
    w.other_leaves.resize(*l);
    for (auto& e : w.other_leaves) read_entry(e);
    return w;
  }
};

/// Serialized size split by witness component. metadata covers the count
/// header and the per-key depth/status bytes; the four parts sum to the
/// serialized length.
struct WitnessSize {
  std::size_t leaf_bytes = 0;
  std::size_t commitment_bytes = 0;
  std::size_t multiproof_bytes = 0;
  std::size_t metadata_bytes = 0;

  std::size_t total() const { return leaf_bytes + commitment_bytes + multiproof_bytes + metadata_bytes; }
};

inline WitnessSize witness_size(const VerkleWitness& w) {
  WitnessSize s;
  s.leaf_bytes = 64 * (w.leaves.size() + w.other_leaves.size());
  s.commitment_bytes = Commitment::kBytes * w.path_commitments.size();
  s.multiproof_bytes = w.multiproof.size_bytes();
  s.metadata_bytes = w.has_body() ? 12 + 2 * w.meta.size() : 0;
  return s;
}

inline std::size_t witness_size_bytes(const VerkleWitness& w) { return witness_size(w).total(); }

namespace verkle_detail {

inline constexpr std::string_view kTranscriptDomain = "witbench.verkle.witness";

inline std::string prefix_of(const VerkleKey& k, std::size_t len) {
  return std::string(reinterpret_cast<const char*>(k.data()), len);
}

inline bool is_zero(const VerkleValue& v) {
  return std::all_of(v.begin(), v.end(), [](std::uint8_t b) { return b == 0; });
}

}  // namespace verkle_detail

/// Builds a witness for `keys` (duplicates allowed). Throws std::logic_error
/// if the tree has uncommitted changes.
inline VerkleWitness make_witness(const VerkleTree& tree, std::span<const VerkleKey> keys) {
  using namespace verkle_detail;
  using Status = VerkleWitness::Status;
  if (tree.dirty()) throw std::logic_error("make_witness: call root_commitment() first");

  VerkleWitness w;
  std::map<std::string, const VerkleTree::Internal*> nodes;
  std::map<std::pair<std::string, std::uint8_t>, Fr> openings;
  std::map<VerkleKey, VerkleValue> others;

  for (const auto& key : keys) {
    const VerkleTree::Internal* node = &tree.root();
    for (std::size_t depth = 0;; ++depth) {
      std::string prefix = prefix_of(key, depth);
      nodes.emplace(prefix, node);
      const std::uint8_t idx = key[depth];
      const VerkleTree::Child* c = node->find(idx);
      if (!c) {
        openings.emplace(std::pair(prefix, idx), Fr::zero());
        w.leaves.push_back({key, VerkleValue{}});
        w.meta.push_back({std::uint8_t(depth), Status::absent_empty});
        break;
      }
      if (const auto* leaf = c->leaf()) {
        openings.emplace(std::pair(prefix, idx), leaf->slot);
        if (leaf->key == key) {
          w.leaves.push_back({key, leaf->value});
          w.meta.push_back({std::uint8_t(depth), Status::present});
        } else {
          w.leaves.push_back({key, VerkleValue{}});
          w.meta.push_back({std::uint8_t(depth), Status::absent_other});
          others.emplace(leaf->key, leaf->value);
        }
        break;
      }
      node = c->internal();
      openings.emplace(std::pair(prefix, idx), node->field);
    }
  }

  for (const auto& [prefix, node] : nodes) {
    if (!prefix.empty()) w.path_commitments.push_back(node->commitment);
  }
  for (const auto& [k, v] : others) w.other_leaves.push_back({k, v});

  std::map<std::string, Polynomial> polys;
  for (const auto& [prefix, node] : nodes) {
    polys.emplace(prefix, Polynomial(tree.key().domain(), node->slots()));
  }
  std::vector<ProverQuery> queries;
  queries.reserve(openings.size());
  for (const auto& [at, y] : openings) {
    const auto* node = nodes.at(at.first);
    queries.push_back({&polys.at(at.first), node->commitment, Fr::from_u64(at.second), y});
  }
  Transcript tr(kTranscriptDomain);
  w.multiproof = multiprove(tree.key(), queries, tr);
  return w;
}

struct VerkleVerification {
  Verdict verdict = Verdict::malformed;
  /// Queried key -> value, nullopt for absent; filled only on accept.
  std::map<VerkleKey, std::optional<VerkleValue>> values;
};

/// Checks the witness against a root commitment for exactly `keys`, in the
/// order the witness was built for.
inline VerkleVerification verify_witness(const Commitment& root, std::span<const VerkleKey> keys,
                                         const VerkleWitness& w,
                                         const CommitmentKey& ck = CommitmentKey::default_key()) {
  using namespace verkle_detail;
  using Status = VerkleWitness::Status;
  VerkleVerification out;
  if (w.leaves.size() != keys.size() || w.meta.size() != keys.size()) return out;
  if (keys.empty()) {
    if (w.has_body()) return out;
    out.verdict = Verdict::accept;
    return out;
  }
  out.verdict = Verdict::reject;

  std::set<std::string> prefixes;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (w.leaves[i].key != keys[i]) return out;
    if (w.meta[i].depth >= keys[i].size()) {
      out.verdict = Verdict::malformed;
      return out;
    }
    for (std::size_t d = 1; d <= w.meta[i].depth; ++d) prefixes.insert(prefix_of(keys[i], d));
  }
  if (prefixes.size() != w.path_commitments.size()) return out;
  std::map<std::string, const Commitment*> com_of;
  {
    std::size_t j = 0;
    for (const auto& p : prefixes) com_of.emplace(p, &w.path_commitments[j++]);
  }
  for (std::size_t j = 1; j < w.other_leaves.size(); ++j) {
    if (!(w.other_leaves[j - 1].key < w.other_leaves[j].key)) return out;
  }
  std::vector<bool> other_used(w.other_leaves.size(), false);

  std::map<std::pair<std::string, std::uint8_t>, Fr> openings;
  auto claim = [&](std::string prefix, std::uint8_t idx, const Fr& y) {
    auto [it, fresh] = openings.emplace(std::pair(std::move(prefix), idx), y);
    return fresh || it->second == y;
  };

  for (std::size_t i = 0; i < keys.size(); ++i) {
    const auto& key = keys[i];
    const std::size_t depth = w.meta[i].depth;
    for (std::size_t d = 0; d < depth; ++d) {
      if (!claim(prefix_of(key, d), key[d], map_to_field(*com_of.at(prefix_of(key, d + 1))))) return out;
    }
    Fr y = Fr::zero();
    switch (w.meta[i].status) {
      case Status::present:
        y = leaf_slot(key, w.leaves[i].value);
        break;
      case Status::absent_empty:
        if (!is_zero(w.leaves[i].value)) return out;
        break;
      case Status::absent_other: {
        if (!is_zero(w.leaves[i].value)) return out;
        // The diverging leaf shares key[0..depth] and sits in that slot.
        auto shares = [&](std::size_t j) {
          return std::equal(key.begin(), key.begin() + depth + 1, w.other_leaves[j].key.begin()) &&
                 w.other_leaves[j].key != key;
        };
        auto it = std::lower_bound(w.other_leaves.begin(), w.other_leaves.end(), key,
                                   [](const VerkleWitness::LeafEntry& e, const VerkleKey& k) { return e.key < k; });
        std::size_t pos = std::size_t(it - w.other_leaves.begin());
        std::optional<std::size_t> found;
        if (pos < w.other_leaves.size() && shares(pos)) found = pos;
        else if (pos > 0 && shares(pos - 1)) found = pos - 1;
        if (!found) return out;
        other_used[*found] = true;
        y = leaf_slot(w.other_leaves[*found].key, w.other_leaves[*found].value);
        break;
      }
    }
    if (!claim(prefix_of(key, depth), key[depth], y)) return out;
  }
  if (std::find(other_used.begin(), other_used.end(), false) != other_used.end()) return out;

  std::vector<VerifierQuery> queries;
  queries.reserve(openings.size());
  for (const auto& [at, y] : openings) {
    const Commitment& c = at.first.empty() ? root : *com_of.at(at.first);
    queries.push_back({c, Fr::from_u64(at.second), y});
  }
  Transcript tr(kTranscriptDomain);
  Verdict v = verify_multiproof(ck, queries, w.multiproof, tr);
  if (v != Verdict::accept) {
    out.verdict = v == Verdict::malformed ? Verdict::malformed : Verdict::reject;
    return out;
  }
  out.verdict = Verdict::accept;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    out.values[keys[i]] =
        w.meta[i].status == Status::present ? std::optional(w.leaves[i].value) : std::nullopt;
  }
  return out;
}

/// Byte-level entry point: unparseable input is `malformed`.
inline VerkleVerification verify_witness(const Commitment& root, std::span<const VerkleKey> keys,
                                         std::span<const std::uint8_t> witness_bytes,
                                         const CommitmentKey& ck = CommitmentKey::default_key()) {
  auto w = VerkleWitness::parse(witness_bytes);
  if (!w) return VerkleVerification{};
  return verify_witness(root, keys, *w, ck);
}

}  // namespace witbench

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
#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "witbench/algebra/field.hpp"
#include "witbench/algebra/hash.hpp"
#include "witbench/commitment/key.hpp"

namespace witbench {

using VerkleKey = std::array<std::uint8_t, 32>;
using VerkleValue = std::array<std::uint8_t, 32>;

/// Slot value of an internal child: SHA-256 over a tag and the 48-byte
/// encoding, reduced into Fr.
inline Fr map_to_field(const Commitment& c) {
  Digest d = Sha256().update(std::string_view("witbench.verkle.commitment")).update(c.bytes()).finalize();
  return Fr::from_bytes_reduce(d);
}

/// Slot value of a leaf child: SHA-256 over a distinct tag, key and value.
inline Fr leaf_slot(const VerkleKey& key, const VerkleValue& value) {
  Digest d = Sha256().update(std::string_view("witbench.verkle.leaf")).update(key).update(value).finalize();
  return Fr::from_bytes_reduce(d);
}

/// Arity-256 path-compressed Verkle tree held in memory.
///
/// Byte i of a key selects the child at depth i. A subtree holding a single
/// leaf is stored as that leaf directly under the deepest internal node its
/// key shares with any other key. The root is always internal (empty tree:
/// no children, commitment = identity).
class VerkleTree {
 public:
  struct Leaf {
    VerkleKey key;
    VerkleValue value;
    Fr slot;
  };
  struct Internal;
  struct Child {
    std::uint8_t index;
    std::variant<std::unique_ptr<Leaf>, std::unique_ptr<Internal>> node;

    const Leaf* leaf() const {
      auto* p = std::get_if<std::unique_ptr<Leaf>>(&node);
      return p ? p->get() : nullptr;
    }
    const Internal* internal() const {
      auto* p = std::get_if<std::unique_ptr<Internal>>(&node);
      return p ? p->get() : nullptr;
    }
  };
  struct Internal {
    std::vector<Child> children;  // sorted by index
    GroupElement point;
    Commitment commitment;
    Fr field;
    bool dirty = true;

    const Child* find(std::uint8_t idx) const {
      auto it = std::lower_bound(children.begin(), children.end(), idx,
                                 [](const Child& c, std::uint8_t i) { return c.index < i; });
      return it != children.end() && it->index == idx ? &*it : nullptr;
    }

    /// Evaluation vector: leaf slot, child commitment field, or zero.
    std::vector<Fr> slots() const {
      std::vector<Fr> out(CommitmentKey::kWidth, Fr::zero());
      for (const auto& c : children) out[c.index] = c.leaf() ? c.leaf()->slot : c.internal()->field;
      return out;
    }
  };

  explicit VerkleTree(const CommitmentKey& key = CommitmentKey::default_key()) : key_(&key) {}

  VerkleTree(VerkleTree&&) = default;
  VerkleTree& operator=(VerkleTree&&) = default;

  const CommitmentKey& key() const { return *key_; }
  std::size_t size() const { return size_; }
  std::size_t internal_count() const { return internal_count_; }
  bool dirty() const { return root_.dirty; }
  const Internal& root() const { return root_; }

  /// Inserts or overwrites. Marks every internal node on the path dirty.
  void insert(const VerkleKey& key, const VerkleValue& value) {
    Internal* node = &root_;
    for (std::size_t depth = 0;; ++depth) {
      node->dirty = true;
      const std::uint8_t idx = key[depth];
      auto it = std::lower_bound(node->children.begin(), node->children.end(), idx,
                                 [](const Child& c, std::uint8_t i) { return c.index < i; });
      if (it == node->children.end() || it->index != idx) {
        node->children.insert(it, Child{idx, make_leaf(key, value)});
        ++size_;
        return;
      }
      if (auto* leafp = std::get_if<std::unique_ptr<Leaf>>(&it->node)) {
        Leaf& leaf = **leafp;
        if (leaf.key == key) {
          leaf.value = value;
          leaf.slot = leaf_slot(key, value);
          return;
        }
        it->node = split(std::move(*leafp), key, value, depth + 1);
        ++size_;
        return;
      }
      node = std::get<std::unique_ptr<Internal>>(it->node).get();
    }
  }

  std::optional<VerkleValue> get(const VerkleKey& key) const {
    const Internal* node = &root_;
    for (std::size_t depth = 0; depth < key.size(); ++depth) {
      const Child* c = node->find(key[depth]);
      if (!c) return std::nullopt;
      if (const Leaf* l = c->leaf()) return l->key == key ? std::optional(l->value) : std::nullopt;
      node = c->internal();
    }
    return std::nullopt;
  }

  /// Number of edges from the root to the key's leaf, if present.
  std::optional<std::size_t> leaf_depth(const VerkleKey& key) const {
    const Internal* node = &root_;
    for (std::size_t depth = 0; depth < key.size(); ++depth) {
      const Child* c = node->find(key[depth]);
      if (!c) return std::nullopt;
      if (const Leaf* l = c->leaf()) return l->key == key ? std::optional(depth + 1) : std::nullopt;
      node = c->internal();
    }
    return std::nullopt;
  }

  /// Recomputes every dirty commitment bottom-up and returns the root's.
  const Commitment& root_commitment() {
    if (root_.dirty) {
      refresh(root_);
      root_.commitment = Commitment(root_.point);
      root_.field = map_to_field(root_.commitment);
    }
    return root_.commitment;
  }

 private:
  std::unique_ptr<Leaf> make_leaf(const VerkleKey& key, const VerkleValue& value) {
    return std::make_unique<Leaf>(Leaf{key, value, leaf_slot(key, value)});
  }

  // Replaces a leaf by the chain of internal nodes needed to separate it from
  // a new key; `depth` is the depth of the first new internal node.
  std::unique_ptr<Internal> split(std::unique_ptr<Leaf> existing, const VerkleKey& key, const VerkleValue& value,
                                  std::size_t depth) {
    auto top = std::make_unique<Internal>();
    ++internal_count_;
    Internal* cur = top.get();
    while (existing->key[depth] == key[depth]) {
      auto next = std::make_unique<Internal>();
      ++internal_count_;
      Internal* raw = next.get();
      cur->children.push_back(Child{key[depth], std::move(next)});
      cur = raw;
      ++depth;
    }
    const std::uint8_t a = existing->key[depth], b = key[depth];
    auto fresh = make_leaf(key, value);
    if (a < b) {
      cur->children.push_back(Child{a, std::move(existing)});
      cur->children.push_back(Child{b, std::move(fresh)});
    } else {
      cur->children.push_back(Child{b, std::move(fresh)});
      cur->children.push_back(Child{a, std::move(existing)});
    }
    return top;
  }

  // Leaves n.point current. Dirty internal children are refreshed first and
  // their encodings computed together with one shared inversion.
  void refresh(Internal& n) {
    std::vector<Internal*> stale;
    for (auto& c : n.children) {
      if (auto* p = std::get_if<std::unique_ptr<Internal>>(&c.node); p && (*p)->dirty) {
        refresh(**p);
        stale.push_back(p->get());
      }
    }
    if (!stale.empty()) {
      std::vector<GroupElement> pts;
      pts.reserve(stale.size());
      for (auto* s : stale) pts.push_back(s->point);
      auto coms = Commitment::from_points(pts);
      for (std::size_t i = 0; i < stale.size(); ++i) {
        stale[i]->commitment = coms[i];
        stale[i]->field = map_to_field(coms[i]);
      }
    }
    std::vector<std::pair<std::uint8_t, Fr>> slots;
    slots.reserve(n.children.size());
    for (const auto& c : n.children) slots.emplace_back(c.index, c.leaf() ? c.leaf()->slot : c.internal()->field);
    n.point = key_->commit_sparse(slots);
    n.dirty = false;
  }

  const CommitmentKey* key_;
  Internal root_;
  std::size_t size_ = 0;
  std::size_t internal_count_ = 1;
};

}  // namespace witbench

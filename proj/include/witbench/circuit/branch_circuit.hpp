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
#include <stdexcept>
#include <vector>

#include "witbench/circuit/r1cs.hpp"
#include "witbench/merkle/binary_tree.hpp"
#include "witbench/merkle/poseidon.hpp"

namespace witbench {

/// R1CS for "folding `leaf` up a path of `depth` siblings selected by the
/// index bits yields `root`".
///
/// Public inputs, in order: root, leaf, index bits b_0..b_{d-1}. Per level,
/// with running node cur, sibling s and bit b:
///   b * (b - 1) = 0
///   b * (s - cur) = t              left = cur + t, right = s - t
/// then the permutation on (0, left, right) with every S-box x^7 spelled out
/// as x*x = x2, x2*x2 = x4, x4*x2 = x6, x6*x = x7; round constants and the
/// mixing matrix stay inside linear combinations. Finally
/// (cur - root) * 1 = 0.
struct BranchCircuit {
  static constexpr std::uint32_t kRoot = 1;
  static constexpr std::uint32_t kLeaf = 2;

  std::size_t depth = 0;
  ConstraintSystem cs;
  std::vector<std::uint32_t> siblings;

  static constexpr std::uint32_t bit(std::size_t level) { return 3 + std::uint32_t(level); }

  /// Constraints added per level (everything except the final equality).
  static constexpr std::size_t constraints_per_level() {
    std::size_t sboxes = 0;
    for (std::size_t r = 0; r < Poseidon::kRounds; ++r) sboxes += Poseidon::is_full_round(r) ? Poseidon::kWidth : 1;
    return 2 + 4 * sboxes;
  }
};

namespace detail {

inline LC sbox_gadget(ConstraintSystem& cs, const LC& x) {
  auto x2 = cs.alloc_private();
  cs.enforce(x, x, LC::variable(x2));
  auto x4 = cs.alloc_private();
  cs.enforce(LC::variable(x2), LC::variable(x2), LC::variable(x4));
  auto x6 = cs.alloc_private();
  cs.enforce(LC::variable(x4), LC::variable(x2), LC::variable(x6));
  auto x7 = cs.alloc_private();
  cs.enforce(LC::variable(x6), x, LC::variable(x7));
  return LC::variable(x7);
}

inline LC hash2_gadget(ConstraintSystem& cs, const LC& a, const LC& b) {
  const auto& p = Poseidon::instance();
  std::array<LC, Poseidon::kWidth> s{LC(), a, b};
  for (std::size_t round = 0; round < Poseidon::kRounds; ++round) {
    for (std::size_t i = 0; i < Poseidon::kWidth; ++i) s[i] += LC::constant(p.round_constants(round)[i]);
    if (Poseidon::is_full_round(round)) {
      for (auto& x : s) x = sbox_gadget(cs, x);
    } else {
      s[0] = sbox_gadget(cs, s[0]);
    }
    std::array<LC, Poseidon::kWidth> mixed;
    for (std::size_t i = 0; i < Poseidon::kWidth; ++i) {
      for (std::size_t j = 0; j < Poseidon::kWidth; ++j) mixed[i] += p.mds()[i][j] * s[j];
    }
    s = std::move(mixed);
  }
  return s[1];
}

}  // namespace detail

/// Throws std::invalid_argument unless 1 <= depth <= 64.
inline BranchCircuit build_branch_circuit(std::size_t depth) {
  if (depth == 0 || depth > BinaryMerkleTree::kMaxDepth) throw std::invalid_argument("circuit depth must be in [1, 64]");
  BranchCircuit bc;
  bc.depth = depth;
  auto& cs = bc.cs;
  cs.alloc_public();  // root
  cs.alloc_public();  // leaf
  for (std::size_t i = 0; i < depth; ++i) cs.alloc_public();
  const LC one = LC::constant(Fr::one());
  LC cur = LC::variable(BranchCircuit::kLeaf);
  for (std::size_t i = 0; i < depth; ++i) {
    const LC b = LC::variable(BranchCircuit::bit(i));
    const auto s_var = cs.alloc_private();
    bc.siblings.push_back(s_var);
    const LC s = LC::variable(s_var);
    cs.enforce(b, b - one, LC());
    const auto t_var = cs.alloc_private();
    const LC t = LC::variable(t_var);
    cs.enforce(b, s - cur, t);
    cur = detail::hash2_gadget(cs, cur + t, s - t);
  }
  cs.enforce(cur - LC::variable(BranchCircuit::kRoot), one, LC());
  return bc;
}

/// Full assignment from explicit public values and siblings; bits may be
/// any field element (non-boolean bits leave the assignment unsatisfied).
inline Assignment assign_inputs(const BranchCircuit& bc, const Fr& root, const Fr& leaf, std::span<const Fr> bits,
                                std::span<const Fr> siblings) {
  if (bits.size() != bc.depth || siblings.size() != bc.depth) throw std::invalid_argument("branch depth mismatch");
  Assignment w(bc.cs.num_variables());
  std::vector<bool> known(w.size(), false);
  auto set = [&](std::uint32_t v, const Fr& x) {
    w[v] = x;
    known[v] = true;
  };
  set(ConstraintSystem::kOne, Fr::one());
  set(BranchCircuit::kRoot, root);
  set(BranchCircuit::kLeaf, leaf);
  for (std::size_t i = 0; i < bc.depth; ++i) {
    set(BranchCircuit::bit(i), bits[i]);
    set(bc.siblings[i], siblings[i]);
  }
  solve(bc.cs, w, known);
  return w;
}

/// Throws std::invalid_argument when the branch length differs from the
/// circuit depth or the index does not fit in depth bits.
inline Assignment assign_branch(const BranchCircuit& bc, const MerkleBranch& branch, const Fr& root) {
  if (branch.siblings.size() != bc.depth) throw std::invalid_argument("branch depth mismatch");
  if (bc.depth < 64 && (branch.index >> bc.depth) != 0) throw std::invalid_argument("branch index out of range");
  std::vector<Fr> bits(bc.depth);
  for (std::size_t i = 0; i < bc.depth; ++i) bits[i] = Fr::from_u64((branch.index >> i) & 1);
  return assign_inputs(bc, root, branch.leaf, bits, branch.siblings);
}

/// Public part of an assignment: root, leaf, bits.
inline std::vector<Fr> public_inputs(const ConstraintSystem& cs, std::span<const Fr> w) {
  return std::vector<Fr>(w.begin() + 1, w.begin() + 1 + cs.num_public());
}

}  // namespace witbench

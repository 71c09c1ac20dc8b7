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


#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "test_util.hpp"
#include "witbench/circuit/branch_circuit.hpp"
#include "witbench/circuit/r1cs.hpp"
#include "witbench/merkle/binary_tree.hpp"

namespace witbench {
namespace {

using testing::random_fr;

TEST(ConstraintSystem, TrivialCases) {
  ConstraintSystem empty;
  EXPECT_TRUE(is_satisfied(empty, Assignment{Fr::one()}));

  ConstraintSystem cs;
  auto x = cs.alloc_private();
  cs.enforce(LC::variable(x), LC::variable(x), LC::variable(x));
  EXPECT_TRUE(is_satisfied(cs, Assignment{Fr::one(), Fr::one()}));
  EXPECT_TRUE(is_satisfied(cs, Assignment{Fr::one(), Fr::zero()}));
  EXPECT_FALSE(is_satisfied(cs, Assignment{Fr::one(), Fr::from_u64(2)}));
  EXPECT_FALSE(is_satisfied(cs, Assignment{Fr::from_u64(2), Fr::one()}));
  EXPECT_THROW(is_satisfied(cs, Assignment{Fr::one()}), std::invalid_argument);
  EXPECT_THROW(cs.enforce(LC::variable(7), LC(), LC()), std::out_of_range);
  EXPECT_THROW(cs.alloc_public(), std::logic_error);
}

TEST(LinearCombination, MergesLikeTerms) {
  LC a = LC::variable(3, Fr::from_u64(2)) + LC::variable(1, Fr::from_u64(5));
  LC b = LC::variable(3, -Fr::from_u64(2)) + LC::variable(2);
  LC s = a + b;
  ASSERT_EQ(s.terms().size(), 2u);
  EXPECT_EQ(s.terms()[0].first, 1u);
  EXPECT_EQ(s.terms()[1].first, 2u);
  std::vector<Fr> w{Fr::one(), Fr::from_u64(10), Fr::from_u64(20), Fr::from_u64(30)};
  EXPECT_EQ(s.evaluate(w), Fr::from_u64(70));
  EXPECT_EQ((a - a).terms().size(), 0u);
  EXPECT_EQ((Fr::from_u64(3) * a).evaluate(w), Fr::from_u64(3 * (60 + 50)));
}

bool circuit_accepts(const BranchCircuit& bc, const MerkleBranch& b, const Fr& root) {
  try {
    return is_satisfied(bc.cs, assign_branch(bc, b, root));
  } catch (const std::invalid_argument&) {
    return false;
  }
}

TEST(BranchCircuit, AgreesWithVerifyBranch) {
  std::mt19937_64 rng(21);
  int cases = 0, accepts = 0;
  for (std::size_t d : {1, 4, 8, 16}) {
    const auto bc = build_branch_circuit(d);
    BinaryMerkleTree t(d);
    const std::uint64_t n = std::uint64_t(1) << d;
    for (int i = 0; i < 64; ++i) t.set_leaf(rng() % n, random_fr(rng));
    const Fr root = t.root();
    for (int i = 0; i < 160; ++i) {
      MerkleBranch b = t.branch(rng() % n);
      Fr r = root;
      switch (i % 8) {
        case 0: case 1: case 2: break;
        case 3: b.siblings[rng() % d] += Fr::one(); break;
        case 4: b.leaf = random_fr(rng); break;
        case 5: b.index ^= std::uint64_t(1) << (rng() % d); break;
        case 6: r = random_fr(rng); break;
        case 7: b.index |= n; break;
      }
      const bool expect = verify_branch(r, b, d) == Verdict::accept;
      ASSERT_EQ(circuit_accepts(bc, b, r), expect) << "depth " << d << " case " << i;
      accepts += expect;
      ++cases;
    }
  }
  EXPECT_GE(cases, 500);
  EXPECT_GE(accepts, 200);
}

TEST(BranchCircuit, ExhaustiveDepthOneOverSample) {
  const auto bc = build_branch_circuit(1);
  std::mt19937_64 rng(22);
  const std::vector<Fr> sample{Fr::zero(), Fr::one(), -Fr::one(), random_fr(rng)};
  int accepts = 0;
  for (const auto& leaf : sample) {
    for (const auto& sib : sample) {
      for (std::uint64_t bit : {0, 1}) {
        MerkleBranch b{bit, leaf, {sib}};
        std::vector<Fr> roots = sample;
        roots.push_back(bit ? hash2(sib, leaf) : hash2(leaf, sib));
        for (const auto& root : roots) {
          const bool expect = verify_branch(root, b, 1) == Verdict::accept;
          ASSERT_EQ(circuit_accepts(bc, b, root), expect);
          accepts += expect;
        }
      }
    }
  }
  EXPECT_EQ(accepts, 4 * 4 * 2);
}

TEST(BranchCircuit, NonBooleanBitRejected) {
  const auto bc = build_branch_circuit(1);
  std::mt19937_64 rng(23);
  Fr leaf = random_fr(rng), sib = random_fr(rng);
  // With b = 2 the selection gives left = 2s - leaf, right = leaf - s; pick
  // the root that this selection hashes to so that only booleanity fails.
  Fr two = Fr::from_u64(2);
  Fr root = hash2(leaf + two * (sib - leaf), sib - two * (sib - leaf));
  std::vector<Fr> bits{two}, sibs{sib};
  auto w = assign_inputs(bc, root, leaf, bits, sibs);
  EXPECT_FALSE(is_satisfied(bc.cs, w));
  // The same witness with the booleanity row dropped would pass.
  ConstraintSystem relaxed;
  for (std::uint32_t i = 0; i < bc.cs.num_public(); ++i) relaxed.alloc_public();
  while (relaxed.num_variables() < bc.cs.num_variables()) relaxed.alloc_private();
  for (std::size_t j = 1; j < bc.cs.size(); ++j) {
    const auto& c = bc.cs.constraints()[j];
    relaxed.enforce(c.a, c.b, c.c);
  }
  EXPECT_TRUE(is_satisfied(relaxed, w));
}

TEST(BranchCircuit, ConstraintCountLinearInDepth) {
  const std::size_t per = BranchCircuit::constraints_per_level();
  EXPECT_EQ(per, 2u + 4u * (8u * 3u + 57u));
  for (std::size_t d : {1, 2, 4, 8}) {
    auto bc = build_branch_circuit(d);
    EXPECT_EQ(bc.cs.size(), per * d + 1) << d;
    EXPECT_EQ(bc.cs.num_public(), 2 + d);
  }
  EXPECT_THROW(build_branch_circuit(0), std::invalid_argument);
  EXPECT_THROW(build_branch_circuit(65), std::invalid_argument);
}

TEST(BranchCircuit, DeterministicSerialization) {
  auto a = build_branch_circuit(3), b = build_branch_circuit(3);
  EXPECT_EQ(a.cs.serialize(), b.cs.serialize());
  EXPECT_EQ(a.cs.digest(), b.cs.digest());
  EXPECT_NE(a.cs.digest(), build_branch_circuit(4).cs.digest());
}

TEST(BranchCircuit, DepthMismatchRejected) {
  auto bc = build_branch_circuit(4);
  BinaryMerkleTree t(5);
  EXPECT_THROW(assign_branch(bc, t.branch(3), t.root()), std::invalid_argument);
}

}  // namespace
}  // namespace witbench

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


// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are exact unless a line says otherwise.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "brute_force.hpp"
#include "test_util.hpp"
#include "witbench/backend/ipa_backend.hpp"
#include "witbench/bench/runner.hpp"
#include "witbench/circuit/branch_circuit.hpp"
#include "witbench/commitment/multiproof.hpp"
#include "witbench/merkle/binary_tree.hpp"
#include "witbench/sizing/sizing.hpp"
#include "witbench/verkle/witness.hpp"

namespace {

using namespace witbench;
using testing::random_fr;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  /// Records the first failure message; later ones are counted only.
  void fail(const std::string& why) {
    if (pass) detail << "first failure: " << why << "; ";
    pass = false;
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

// ---------------------------------------------------------------- 1, 2

void verkle_size_formula(Outcome& o) {
  SizeModel m;
  m.scheme = SizeScheme::verkle;
  m.keys = 5000;
  m.commitments = 10000;
  auto got = estimate(m).total;
  o.expect(got == 2 * 5000 * 32 + 10000 * 48 + 200, "estimate = " + std::to_string(got));
  o.expect(got == 800200, "expected 800200");
  o.detail << "verkle K=5000 C=10000 -> " << got << " bytes";
}

void snark_size_formula(Outcome& o) {
  SizeModel m;
  m.scheme = SizeScheme::snark_merkle;
  m.keys = 5000;
  auto got = estimate(m).total;
  o.expect(got == 2560000, "estimate = " + std::to_string(got));
  o.detail << "snark-merkle K=5000 -> " << got << " bytes";
}

// ---------------------------------------------------------------- 3

// Smallest d with k^d >= n, by repeated multiplication.
std::uint64_t levels(std::uint64_t k, std::uint64_t n) {
  std::uint64_t d = 0;
  unsigned __int128 reach = 1;
  while (reach < n) reach *= k, ++d;
  return d;
}

// Walks an explicit arity-k tree padded to k^depth leaf slots and counts,
// for every key, each child of each ancestor that is not on the key's path.
std::uint64_t counted_siblings(std::uint64_t k, std::uint64_t n, const std::vector<std::uint64_t>& keys) {
  const std::uint64_t depth = levels(k, n);
  std::uint64_t count = 0;
  for (auto leaf : keys) {
    std::uint64_t pos = leaf;
    for (std::uint64_t level = 0; level < depth; ++level) {
      const std::uint64_t parent = pos / k;
      for (std::uint64_t c = parent * k; c < parent * k + k; ++c) count += c != pos;
      pos = parent;
    }
  }
  return count;
}

void naive_formula_shape(Outcome& o) {
  const std::uint64_t T = 5000, B = 32;
  int checks = 0;
  for (std::uint64_t k : {2, 16, 256}) {
    for (unsigned e = 10; e <= 28; ++e) {
      const std::uint64_t n = std::uint64_t(1) << e;
      const std::uint64_t d = levels(k, n);
      const std::uint64_t got = naive_witness_size(T, B, k, n);
      o.expect(got == T * B * (k - 1) * d, "closed form at k=" + std::to_string(k) + " N=2^" + std::to_string(e));
      // Linear in (k - 1) at a fixed level count, and in the level count.
      o.expect(got == (k - 1) * naive_witness_size(T, B, 2, std::uint64_t(1) << d), "not linear in k-1");
      o.expect(got == d * naive_witness_size(T, B, k, k), "not linear in levels");
      checks += 3;
    }
  }

  // Direct counting. Binary: branches from real trees, every N up to 256.
  std::mt19937_64 rng(3);
  for (std::uint64_t n = 2; n <= 256; ++n) {
    const std::uint64_t depth = levels(2, n);
    BinaryMerkleTree t(depth);
    std::vector<std::uint64_t> keys;
    for (std::uint64_t i = 0; i < std::min<std::uint64_t>(n, 7); ++i) keys.push_back(rng() % n);
    std::uint64_t bytes = 0;
    for (auto i : keys) bytes += t.branch(i).siblings.size() * B;
    o.expect(bytes == naive_witness_size(keys.size(), B, 2, n), "binary tree count at N=" + std::to_string(n));
    o.expect(counted_siblings(2, n, keys) * B == bytes, "explicit binary count at N=" + std::to_string(n));
    ++checks;
  }
  o.expect(naive_witness_size(9, B, 2, 1) == 0, "single-leaf tree should need no siblings");
  // Explicit k-ary trees of depth at most 8.
  const std::pair<std::uint64_t, std::vector<std::uint64_t>> cases[] = {
      {16, {2, 15, 16, 17, 255, 256, 257, 4096, 4097}},
      {256, {2, 255, 256, 257, 65536}},
  };
  for (const auto& [k, ns] : cases) {
    for (auto n : ns) {
      std::vector<std::uint64_t> keys;
      for (int i = 0; i < 7; ++i) keys.push_back(rng() % n);
      o.expect(counted_siblings(k, n, keys) * B == naive_witness_size(keys.size(), B, k, n),
               "explicit count at k=" + std::to_string(k) + " N=" + std::to_string(n));
      ++checks;
    }
  }
  o.detail << checks << " exact checks over k in {2,16,256}, N in 2^10..2^28 and explicit trees";
}

// ---------------------------------------------------------------- 4, 5

std::vector<std::size_t> pick(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(std::min(n, k));
  return idx;
}

std::size_t mutation_rejects(std::mt19937_64& rng, const Commitment& root, const std::vector<VerkleKey>& keys,
                             const Bytes& bytes, int trials) {
  std::size_t rejected = 0;
  for (int i = 0; i < trials; ++i) {
    Bytes mut = bytes;
    const std::size_t pos = rng() % mut.size();
    mut[pos] = std::uint8_t(mut[pos] ^ (1 + rng() % 255));
    rejected += verify_witness(root, keys, mut).verdict != Verdict::accept;
  }
  return rejected;
}

void verkle_round_trip(Outcome& o, std::size_t& multiproof_bytes) {
  std::mt19937_64 rng(4);
  VerkleTree tree;
  std::vector<VerkleKey> keys;
  std::vector<VerkleValue> values;
  std::set<VerkleKey> seen;
  int witnesses = 0;
  std::size_t mutations = 0, rejected = 0;
  for (unsigned e = 10; e <= 20; ++e) {
    const std::size_t n = std::size_t(1) << e;
    while (keys.size() < n) {
      VerkleKey k;
      VerkleValue v;
      for (auto& b : k) b = std::uint8_t(rng());
      for (auto& b : v) b = std::uint8_t(rng());
      if (!seen.insert(k).second) continue;
      tree.insert(k, v);
      keys.push_back(k);
      values.push_back(v);
    }
    const Commitment root = tree.root_commitment();
    for (std::size_t budget : {1, 100, 5000}) {
      auto idx = pick(rng, n, budget);
      std::vector<VerkleKey> q;
      for (auto i : idx) q.push_back(keys[i]);
      // One extra batch per size mixes in absent keys.
      const bool with_absent = budget == 100;
      if (with_absent) {
        for (int i = 0; i < 20; ++i) {
          VerkleKey k;
          for (auto& b : k) b = std::uint8_t(rng());
          q.push_back(k);
        }
      }
      auto w = make_witness(tree, q);
      Bytes bytes = w.serialize();
      auto res = verify_witness(root, q, bytes);
      ++witnesses;
      const std::string where = "N=2^" + std::to_string(e) + " K=" + std::to_string(q.size());
      o.expect(res.verdict == Verdict::accept, "witness rejected at " + where);
      for (std::size_t j = 0; j < idx.size() && res.verdict == Verdict::accept; ++j) {
        o.expect(res.values.at(q[j]) == std::optional(values[idx[j]]), "wrong value at " + where);
      }
      for (std::size_t j = idx.size(); j < q.size() && res.verdict == Verdict::accept; ++j) {
        o.expect(!res.values.at(q[j]).has_value() || seen.count(q[j]), "absent key reported present at " + where);
      }
      if (budget == 5000) multiproof_bytes = w.multiproof.serialize().size();
      if (e == 10 && budget <= 100) {
        const int trials = budget == 1 ? 200 : 320;
        mutations += trials;
        rejected += mutation_rejects(rng, root, q, bytes, trials);
      }
    }
  }
  o.expect(mutations >= 500, "too few mutations");
  o.expect(rejected == mutations, std::to_string(mutations - rejected) + " mutated witnesses accepted");
  o.detail << witnesses << " witnesses over N=2^10..2^20 verified; " << rejected << "/" << mutations
           << " single-byte mutations rejected";
}

void multiproof_constant(Outcome& o, std::size_t witness_multiproof) {
  std::mt19937_64 rng(5);
  const auto& ck = CommitmentKey::default_key();
  std::vector<Polynomial> polys;
  std::vector<Commitment> coms;
  for (int i = 0; i < 500; ++i) {
    polys.emplace_back(ck.domain(), testing::random_frs(rng, 256));
    coms.push_back(ck.commit(polys.back()));
  }
  std::vector<std::size_t> sizes;
  for (std::size_t openings : {1, 100, 5000}) {
    std::vector<ProverQuery> pq;
    std::vector<VerifierQuery> vq;
    for (std::size_t i = 0; i < openings; ++i) {
      const std::size_t p = rng() % std::min<std::size_t>(openings, polys.size());
      const Fr z = Fr::from_u64(rng() % 256);
      const Fr y = lagrange_eval(polys[p], z);
      pq.push_back({&polys[p], coms[p], z, y});
      vq.push_back({coms[p], z, y});
    }
    Transcript tp("acceptance.multiproof");
    Bytes bytes = multiprove(ck, pq, tp).serialize();
    auto parsed = MultiProof::parse(bytes);
    Transcript tv("acceptance.multiproof");
    o.expect(parsed && verify_multiproof(ck, vq, *parsed, tv) == Verdict::accept,
             "multiproof over " + std::to_string(openings) + " openings rejected");
    sizes.push_back(bytes.size());
  }
  o.expect(sizes[0] == sizes[1] && sizes[1] == sizes[2], "sizes differ");
  o.expect(witness_multiproof == sizes[0], "witness multiproof is " + std::to_string(witness_multiproof) + " bytes");
  o.detail << "1/100/5000 openings -> " << sizes[0] << "/" << sizes[1] << "/" << sizes[2]
           << " bytes; 5000-key witness at N=2^20 -> " << witness_multiproof;
}

// ---------------------------------------------------------------- 6, 9

void log_growth(Outcome& o, std::vector<bench::BenchRecord>& out) {
  bench::BenchConfig cfg;
  cfg.scheme = bench::Scheme::verkle;
  cfg.min_log_leaves = 14;
  cfg.max_log_leaves = 20;
  cfg.keys = 5000;
  cfg.reps = 3;
  cfg.seed = 6;
  auto res = bench::run(cfg);
  o.expect(!res.truncated && res.records.size() == 4, "sweep incomplete");
  std::vector<std::uint64_t> means;
  for (const auto& r : res.records) {
    o.expect(r.status == bench::RunStatus::ok && r.reps_completed() == 3, "record not ok");
    means.push_back(bench::BenchRecord::mean(r.witness_bytes));
  }
  o.detail << "mean bytes";
  for (auto m : means) o.detail << " " << m;
  for (std::size_t i = 1; i < means.size(); ++i) {
    o.expect(means[i] >= means[i - 1], "decrease at step " + std::to_string(i));
    if (i >= 2) {
      o.expect(means[i] - means[i - 1] <= means[i - 1] - means[i - 2], "increment grew at step " + std::to_string(i));
    }
  }
  out = std::move(res.records);
}

void harness_determinism(Outcome& o, const std::vector<bench::BenchRecord>& extra) {
  using bench::Scheme;
  struct Case {
    Scheme scheme;
    unsigned lo, hi;
    std::uint64_t keys;
    unsigned reps;
  };
  std::vector<bench::BenchRecord> all = extra;
  for (auto c : {Case{Scheme::verkle, 5, 13, 5000, 2}, Case{Scheme::merkle_naive, 5, 13, 5000, 2},
                 Case{Scheme::merkle_snark, 2, 3, 2, 1}}) {
    bench::BenchConfig cfg;
    cfg.scheme = c.scheme;
    cfg.min_log_leaves = c.lo;
    cfg.max_log_leaves = c.hi;
    cfg.keys = c.keys;
    cfg.reps = c.reps;
    cfg.seed = 9;
    auto a = bench::run(cfg);
    cfg.parallel = 2;
    auto b = bench::run(cfg);
    o.expect(bench::to_csv(a.records, false) == bench::to_csv(b.records, false),
             std::string("non-timing columns differ for ") + to_string(c.scheme));
    all.insert(all.end(), a.records.begin(), a.records.end());
  }
  auto text = bench::to_csv(all);
  o.expect(bench::parse_csv(text) == all, "csv round trip lost information");
  o.expect(bench::parse_json(bench::to_json(all)) == all, "json round trip lost information");
  for (const auto& r : all) {
    o.expect(r.keys_proven == std::min(r.leaves, std::uint64_t(r.scheme == Scheme::merkle_snark ? 2 : 5000)),
             "keys_proven wrong at N=" + std::to_string(r.leaves));
  }
  o.detail << all.size() << " rows: same-seed non-timing columns identical, csv/json round trip exact, keys_proven = min(K, N)";
}

// ---------------------------------------------------------------- 7, 8

BinaryMerkleTree random_tree(std::mt19937_64& rng, std::size_t depth, int leaves) {
  BinaryMerkleTree t(depth);
  const std::uint64_t n = depth >= 63 ? ~std::uint64_t(0) : (std::uint64_t(1) << depth);
  for (int i = 0; i < leaves; ++i) t.set_leaf(rng() % n, random_fr(rng));
  return t;
}

// Honest or mutated (branch, root) pair; mutation kind chosen by `kind`.
std::pair<MerkleBranch, Fr> instance(std::mt19937_64& rng, const BinaryMerkleTree& t, int kind) {
  const std::size_t d = t.depth();
  const std::uint64_t n = std::uint64_t(1) << d;
  MerkleBranch b = t.branch(rng() % n);
  Fr root = t.root();
  switch (kind % 6) {
    case 0: case 1: break;
    case 2: b.siblings[rng() % d] += Fr::one(); break;
    case 3: b.leaf = random_fr(rng); break;
    case 4: b.index ^= std::uint64_t(1) << (rng() % d); break;
    case 5: root = random_fr(rng); break;
  }
  return {b, root};
}

void circuit_equivalence(Outcome& o) {
  std::mt19937_64 rng(7);
  int cases = 0, accepts = 0;
  for (std::size_t d : {1, 4, 8, 16}) {
    auto bc = build_branch_circuit(d);
    auto t = random_tree(rng, d, 1 << std::min<std::size_t>(d, 6));
    for (int i = 0; i < 150; ++i) {
      auto [b, root] = instance(rng, t, i);
      const bool want = verify_branch(root, b, d) == Verdict::accept;
      const bool got = is_satisfied(bc.cs, assign_branch(bc, b, root));
      o.expect(got == want, "disagreement at depth " + std::to_string(d) + " case " + std::to_string(i));
      accepts += want;
      ++cases;
    }
  }
  o.expect(cases >= 500, "too few cases");
  o.detail << cases << " instances at depths 1/4/8/16 (" << accepts << " accept, " << cases - accepts
           << " reject), agreement 100%";
}

void backend_agreement(Outcome& o) {
  std::mt19937_64 rng(8);
  int decisions = 0, accepts = 0;
  for (std::size_t d : {1, 2}) {
    auto bc = build_branch_circuit(d);
    IpaBackend ipa(bc.cs);
    MockBackend mock(bc.cs);
    auto t = random_tree(rng, d, 3);
    for (int i = 0; i < 260; ++i) {
      auto [b, root] = instance(rng, t, i);
      auto w = assign_branch(bc, b, root);
      // Also corrupt an internal wire, which no branch-level mutation reaches.
      if (i % 13 == 7) w[bc.cs.num_public() + 1 + rng() % (bc.cs.num_variables() - 1 - bc.cs.num_public())] += Fr::one();
      const bool m = mock.verify(*mock.prove(w)) == Verdict::accept;
      const bool p = ipa.verify(ipa.prove_unchecked(w)) == Verdict::accept;
      o.expect(m == p, "backends disagree at depth " + std::to_string(d) + " case " + std::to_string(i));
      accepts += m;
      ++decisions;
    }
  }
  o.expect(decisions >= 500, "too few decisions");

  auto bc = build_branch_circuit(16);
  IpaBackend ipa(bc.cs);
  MockBackend mock(bc.cs);
  auto t = random_tree(rng, 16, 200);
  std::set<std::size_t> ipa_sizes;
  std::size_t mock_size = 0;
  for (int i = 0; i < 100; ++i) {
    auto b = t.branch(rng() % (1u << 16));
    auto w = assign_branch(bc, b, t.root());
    auto p = ipa.prove(w);
    o.expect(p && ipa.verify(*p) == Verdict::accept, "depth-16 proof rejected");
    if (p) ipa_sizes.insert(p->proof.size());
    if (i == 0) mock_size = mock.prove(w)->proof.size();
  }
  const std::size_t ipa_size = ipa_sizes.empty() ? 0 : *ipa_sizes.begin();
  o.expect(ipa_sizes.size() == 1, "depth-16 proof sizes vary");
  o.expect(ipa_size * 10 < mock_size, "ipa proof not under 10% of mock");
  o.detail << decisions << " decisions (" << accepts << " accept) agree; depth-16: 100 proofs of " << ipa_size
           << " bytes vs mock " << mock_size << " (" << (100.0 * double(ipa_size) / double(mock_size)) << "%)";
}

// ---------------------------------------------------------------- 10

void brute_force_oracles(Outcome& o) {
  std::mt19937_64 rng(10);
  auto small_key = [&] {
    VerkleKey k{};
    for (int i = 0; i < 4; ++i) k[i] = std::uint8_t(rng() % 4);
    return k;
  };
  auto value = [&] {
    VerkleValue v;
    for (auto& b : v) b = std::uint8_t(rng());
    return v;
  };
  auto build = [](const testing::VerkleMap& m) {
    VerkleTree t;
    for (const auto& [k, v] : m) t.insert(k, v);
    t.root_commitment();
    return t;
  };
  int verkle_checks = 0;
  for (int trial = 0; trial < 90; ++trial) {
    testing::VerkleMap m;
    const std::size_t n = std::size_t(trial % 9);  // 0..8 leaves
    while (m.size() < n) m[small_key()] = value();
    auto t = build(m);
    const Commitment truth = testing::oracle_root(m);
    o.expect(t.root_commitment() == truth, "tree root differs from oracle");
    std::vector<VerkleKey> keys;
    for (int i = 0; i < 4; ++i) keys.push_back(i % 2 && n ? std::next(m.begin(), rng() % n)->first : small_key());
    auto res = verify_witness(truth, keys, make_witness(t, keys));
    o.expect(res.verdict == Verdict::accept, "honest witness rejected");
    for (const auto& k : keys) {
      auto it = m.find(k);
      o.expect(res.verdict != Verdict::accept ||
                   res.values.at(k) == (it == m.end() ? std::nullopt : std::optional(it->second)),
               "value differs from map");
    }
    // Witness from an edited tree: accepted exactly when the oracle roots match.
    testing::VerkleMap m2 = m;
    switch (trial % 3) {
      case 0: if (n) m2[m.begin()->first] = m.begin()->second; break;
      case 1: if (n) m2[std::next(m.begin(), rng() % n)->first][0] ^= 1; break;
      default: m2[small_key()] = value(); break;
    }
    const bool same = testing::oracle_root(m2) == truth;
    auto res2 = verify_witness(truth, keys, make_witness(build(m2), keys));
    o.expect((res2.verdict == Verdict::accept) == same, "decision differs from oracle at trial " + std::to_string(trial));
    verkle_checks += 2;
  }

  int merkle_checks = 0;
  for (std::size_t d = 1; d <= 8; ++d) {
    const std::size_t n = std::size_t(1) << d;
    for (int trial = 0; trial <= 5; ++trial) {
      std::vector<Fr> dense(n, Fr::zero());
      BinaryMerkleTree t(d);
      for (std::size_t i = 0; i < n; ++i) {
        if (std::uniform_int_distribution<int>(0, 4)(rng) < trial) {
          dense[i] = random_fr(rng);
          t.set_leaf(i, dense[i]);
        }
      }
      o.expect(t.root() == testing::dense_root(dense), "sparse root differs at depth " + std::to_string(d));
      ++merkle_checks;
    }
  }

  int quotient_checks = 0;
  for (std::size_t n = 1; n <= 16; ++n) {
    EvaluationDomain dom(n);
    for (int trial = 0; trial < 3; ++trial) {
      auto evals = testing::random_frs(rng, n);
      auto coeffs = testing::newton_coefficients(evals);
      for (std::size_t m = 0; m < n; ++m) {
        Fr rem;
        auto quot = testing::divide_linear(coeffs, evals[m], m, rem);
        o.expect(rem == Fr::zero(), "interpolant misses a point");
        auto q = quotient_in_domain(evals, evals[m], m, dom);
        for (std::size_t j = 0; j < n; ++j) {
          o.expect(q[j] == testing::horner(quot, Fr::from_u64(j)),
                   "quotient differs at n=" + std::to_string(n) + " m=" + std::to_string(m));
        }
        ++quotient_checks;
      }
    }
  }
  o.detail << verkle_checks << " verkle decisions on trees of 0..8 leaves, " << merkle_checks
           << " sparse/dense roots at depth 1..8, " << quotient_checks << " quotients at domain size 1..16";
}

}  // namespace

int main() {
  std::size_t witness_multiproof = 0;
  std::vector<bench::BenchRecord> growth;
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
      {"verkle size formula", verkle_size_formula},
      {"snark-merkle size formula", snark_size_formula},
      {"naive branch size shape", naive_formula_shape},
      {"verkle witness round trip", [&](Outcome& o) { verkle_round_trip(o, witness_multiproof); }},
      {"multiproof constant size", [&](Outcome& o) { multiproof_constant(o, witness_multiproof); }},
      {"logarithmic witness growth", [&](Outcome& o) { log_growth(o, growth); }},
      {"circuit matches branch check", circuit_equivalence},
      {"backend agreement and succinctness", backend_agreement},
      {"harness determinism and schema", [&](Outcome& o) { harness_determinism(o, growth); }},
      {"small-instance brute force", brute_force_oracles},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::printf("%s %2zu %-36s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.str().c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}

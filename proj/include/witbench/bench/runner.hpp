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
#include <chrono>
#include <cmath>
#include <cstdint>
#include <future>
#include <memory>
#include <ostream>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "witbench/backend/ipa_backend.hpp"
#include "witbench/bench/config.hpp"
#include "witbench/bench/record.hpp"
#include "witbench/circuit/branch_circuit.hpp"
#include "witbench/merkle/binary_tree.hpp"
#include "witbench/sizing/sizing.hpp"
#include "witbench/verkle/witness.hpp"

namespace witbench::bench {

/// Raised when a freshly produced witness fails verification.
struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunOutcome {
  bool completed = true;  // false if the time budget cut the run short
  std::uint64_t witness_bytes = 0;
  std::uint64_t modeled_bytes = 0;
  std::uint64_t prove_ns = 0;
  std::uint64_t verify_ns = 0;
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline std::uint64_t ns_between(Clock::time_point a, Clock::time_point b) {
  return std::uint64_t(std::chrono::duration_cast<std::chrono::nanoseconds>(b - a).count());
}

/// Independent stream per (seed, leaf count, purpose, repetition).
inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t leaves, std::uint64_t purpose, std::uint64_t rep) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(leaves), std::uint32_t(leaves >> 32),
                    std::uint32_t(purpose), std::uint32_t(rep)};
  return std::mt19937_64(seq);
}

constexpr std::uint64_t kTreeStream = 1;
constexpr std::uint64_t kKeyStream = 2;

inline Fr random_fr(std::mt19937_64& rng) {
  std::array<std::uint8_t, 32> b;
  for (std::size_t i = 0; i < 32; i += 8) {
    std::uint64_t v = rng();
    for (std::size_t j = 0; j < 8; ++j) b[i + j] = std::uint8_t(v >> (8 * j));
  }
  return Fr::from_bytes_reduce(b);
}

/// min(k, n) distinct indices in [0, n), sorted (Floyd's algorithm).
inline std::vector<std::uint64_t> sample_indices(std::uint64_t n, std::uint64_t k, std::mt19937_64& rng) {
  std::vector<std::uint64_t> out;
  if (k >= n) {
    out.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) out[i] = i;
    return out;
  }
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(k * 2);
  for (std::uint64_t j = n - k; j < n; ++j) {
    std::uint64_t t = std::uniform_int_distribution<std::uint64_t>(0, j)(rng);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  out.assign(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

/// Expected internal nodes (root included) of a path-compressed arity-256
/// tree over n uniformly random keys: a prefix of length d is internal
/// when at least two keys share it.
inline double expected_verkle_internal(std::uint64_t n) {
  double total = 1;
  const double nn = double(n);
  for (int d = 1; d < 32; ++d) {
    const double slots = std::pow(256.0, d);
    const double p = 1 / slots;
    const double none = std::exp(nn * std::log1p(-p));
    const double one = nn * p * std::exp((nn - 1) * std::log1p(-p));
    const double term = slots * (1 - none - one);
    total += term;
    if (term < 1e-6) break;
  }
  return total;
}

constexpr std::uint64_t kAllocOverhead = 16;

inline std::uint64_t verkle_memory(std::uint64_t n, std::uint64_t k) {
  using T = VerkleTree;
  const double internal = expected_verkle_internal(n);
  // Child slots are held in vectors that grow by doubling; budget 2x.
  const double tree = internal * double(sizeof(T::Internal) + kAllocOverhead) +
                      double(n) * double(sizeof(T::Leaf) + kAllocOverhead) +
                      2.0 * double(n + internal) * double(sizeof(T::Child));
  const double key_tables = double(CommitmentKey::kWidth) * double(FixedBaseTable::table_bytes() + kAllocOverhead);
  // The prover materialises one 256-entry polynomial (plus its quotient)
  // per opened node; at most every internal node is opened.
  const double depth = std::max(1.0, std::ceil(std::log(double(n)) / std::log(256.0)));
  const double opened = std::min(internal, double(k) * depth + 1);
  const double prover = opened * 2 * CommitmentKey::kWidth * sizeof(Fr) + double(k) * (64 + 2 + 2 * Commitment::kBytes);
  return std::uint64_t(tree + key_tables + prover);
}

/// Dense binary tree: about 2n hash-map entries (key, value, link, bucket).
inline std::uint64_t binary_tree_memory(std::uint64_t n) {
  const std::uint64_t entry = sizeof(std::uint64_t) + sizeof(Fr) + sizeof(void*) + kAllocOverhead + sizeof(void*);
  return 2 * n * entry + n * sizeof(std::uint64_t);
}

inline std::uint64_t naive_memory(std::uint64_t n, std::uint64_t k) {
  const std::uint64_t depth = std::uint64_t(std::countr_zero(n));
  return binary_tree_memory(n) + k * (8 + (depth + 1) * sizeof(Fr));
}

inline std::uint64_t snark_memory(std::uint64_t n, std::uint64_t k, const BranchCircuit& bc, std::size_t padded_gates,
                                  std::size_t proof_bytes) {
  std::uint64_t terms = 0;
  for (const auto& c : bc.cs.constraints()) terms += c.a.terms().size() + c.b.terms().size() + c.c.terms().size();
  const std::uint64_t circuit = bc.cs.size() * (3 * sizeof(LC) + kAllocOverhead) + terms * sizeof(LC::Term);
  // Backend rows mirror the circuit terms; generators G, H and the prover's
  // folded copies; about sixteen length-n scalar vectors while proving.
  const std::uint64_t backend = 2 * terms * (sizeof(std::uint32_t) + sizeof(Fr));
  const std::uint64_t gens = 4 * padded_gates * sizeof(GroupElement);
  const std::uint64_t prover = 16 * padded_gates * sizeof(Fr);
  const std::uint64_t witness = k * (proof_bytes + 16 + (bc.depth + 2) * sizeof(Fr));
  return naive_memory(n, k) + circuit + backend + gens + prover + witness;
}

/// Builds the tree for one leaf count, then answers repetitions. The tree
/// build is not timed.
class Workload {
 public:
  virtual ~Workload() = default;
  /// Proves and verifies `indices`; throws VerificationFailure if an honest
  /// witness is rejected. Safe to call concurrently.
  virtual RunOutcome run(const std::vector<std::uint64_t>& indices, double budget_s) const = 0;
};

inline bool over(Clock::time_point start, double budget_s) {
  return std::chrono::duration<double>(Clock::now() - start).count() > budget_s;
}

class VerkleWorkload final : public Workload {
 public:
  VerkleWorkload(std::uint64_t n, std::uint64_t seed) {
    auto rng = stream(seed, n, kTreeStream, 0);
    std::unordered_set<std::string> seen;
    keys_.reserve(n);
    values_.reserve(n);
    while (keys_.size() < n) {
      VerkleKey k;
      VerkleValue v;
      for (auto& b : k) b = std::uint8_t(rng());
      for (auto& b : v) b = std::uint8_t(rng());
      if (!seen.insert(std::string(k.begin(), k.end())).second) continue;
      tree_.insert(k, v);
      keys_.push_back(k);
      values_.push_back(v);
    }
    root_ = tree_.root_commitment();
  }

  RunOutcome run(const std::vector<std::uint64_t>& indices, double budget_s) const override {
    std::vector<VerkleKey> keys;
    keys.reserve(indices.size());
    for (auto i : indices) keys.push_back(keys_[i]);

    RunOutcome out;
    auto t0 = Clock::now();
    auto witness = make_witness(tree_, keys);
    Bytes bytes = witness.serialize();
    auto t1 = Clock::now();
    auto check = verify_witness(root_, keys, std::span<const std::uint8_t>(bytes));
    auto t2 = Clock::now();
    out.prove_ns = ns_between(t0, t1);
    out.verify_ns = ns_between(t1, t2);
    out.completed = true;  // a single witness cannot be split; overruns are reported by the caller

    if (check.verdict != Verdict::accept) throw VerificationFailure("verkle witness rejected");
    for (std::size_t j = 0; j < keys.size(); ++j) {
      auto it = check.values.find(keys[j]);
      if (it == check.values.end() || it->second != values_[indices[j]]) {
        throw VerificationFailure("verkle witness returned a wrong value");
      }
    }
    out.witness_bytes = bytes.size();
    SizeModel m;
    m.scheme = SizeScheme::verkle;
    m.keys = keys.size();
    m.commitments = witness.path_commitments.size();
    out.modeled_bytes = estimate(m).total;
    (void)budget_s;
    return out;
  }

 private:
  VerkleTree tree_;
  Commitment root_;
  std::vector<VerkleKey> keys_;
  std::vector<VerkleValue> values_;
};

class BinaryWorkload : public Workload {
 public:
  BinaryWorkload(std::uint64_t n, std::uint64_t seed) : tree_(std::size_t(std::countr_zero(n))) {
    auto rng = stream(seed, n, kTreeStream, 0);
    for (std::uint64_t i = 0; i < n; ++i) tree_.set_leaf(i, random_fr(rng));
    root_ = tree_.root();
  }

 protected:
  BinaryMerkleTree tree_;
  Fr root_;
};

/// Independent classical branches, one per key.
class NaiveWorkload final : public BinaryWorkload {
 public:
  using BinaryWorkload::BinaryWorkload;

  RunOutcome run(const std::vector<std::uint64_t>& indices, double budget_s) const override {
    RunOutcome out;
    const std::size_t d = tree_.depth();
    auto t0 = Clock::now();
    Bytes bytes;
    for (auto i : indices) {
      Bytes b = tree_.branch(i).serialize();
      bytes.insert(bytes.end(), b.begin(), b.end());
      if (over(t0, budget_s)) {
        out.completed = false;
        return out;
      }
    }
    auto t1 = Clock::now();
    const std::size_t each = MerkleBranch{0, Fr::zero(), std::vector<Fr>(d)}.size_bytes();
    if (bytes.size() != each * indices.size()) throw VerificationFailure("branch bytes have the wrong length");
    for (std::size_t j = 0; j < indices.size(); ++j) {
      auto b = MerkleBranch::parse(std::span<const std::uint8_t>(bytes).subspan(j * each, each));
      if (!b || b->index != indices[j] || verify_branch(root_, *b, d) != Verdict::accept) {
        throw VerificationFailure("merkle branch rejected");
      }
      if (over(t0, budget_s)) {
        out.completed = false;
        return out;
      }
    }
    auto t2 = Clock::now();
    out.prove_ns = ns_between(t0, t1);
    out.verify_ns = ns_between(t1, t2);
    out.witness_bytes = bytes.size();
    out.modeled_bytes = naive_witness_size(indices.size(), 32, 2, std::uint64_t(1) << d);
    return out;
  }
};

/// One circuit proof per key; each proof carries its public inputs (root,
/// leaf, index bits) and the verifier checks them against the known root.
class SnarkWorkload final : public BinaryWorkload {
 public:
  SnarkWorkload(std::uint64_t n, std::uint64_t seed)
      : BinaryWorkload(n, seed), circuit_(build_branch_circuit(tree_.depth())), backend_(circuit_.cs) {}

  RunOutcome run(const std::vector<std::uint64_t>& indices, double budget_s) const override {
    RunOutcome out;
    const std::size_t d = tree_.depth();
    auto t0 = Clock::now();
    std::vector<Bytes> proofs;
    proofs.reserve(indices.size());
    for (auto i : indices) {
      auto w = assign_branch(circuit_, tree_.branch(i), root_);
      auto p = backend_.prove(w);
      if (!p) throw VerificationFailure("honest branch assignment is unsatisfied");
      proofs.push_back(p->serialize());
      if (over(t0, budget_s)) {
        out.completed = false;
        return out;
      }
    }
    auto t1 = Clock::now();
    for (std::size_t j = 0; j < indices.size(); ++j) {
      auto p = BranchProof::parse(proofs[j]);
      if (!p || backend_.verify(*p) != Verdict::accept) throw VerificationFailure("branch proof rejected");
      auto pub = decode_fields(p->public_inputs, 2 + d);
      if (!pub || (*pub)[0] != root_ || (*pub)[1] != tree_.leaf(indices[j])) {
        throw VerificationFailure("branch proof public inputs do not match");
      }
      for (std::size_t b = 0; b < d; ++b) {
        if ((*pub)[2 + b] != Fr::from_u64((indices[j] >> b) & 1)) throw VerificationFailure("branch proof index mismatch");
      }
      if (over(t0, budget_s)) {
        out.completed = false;
        return out;
      }
    }
    auto t2 = Clock::now();
    out.prove_ns = ns_between(t0, t1);
    out.verify_ns = ns_between(t1, t2);
    for (const auto& p : proofs) out.witness_bytes += p.size();
    SizeModel m;
    m.scheme = SizeScheme::snark_merkle;
    m.keys = indices.size();
    m.pre_post = false;
    out.modeled_bytes = estimate(m).total;
    return out;
  }

 private:
  BranchCircuit circuit_;
  IpaBackend backend_;
};

inline std::int64_t now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::system_clock::now().time_since_epoch())
      .count();
}

}  // namespace detail

/// Analytic peak-memory estimate for one leaf count, in bytes.
inline std::uint64_t estimate_peak_memory(Scheme s, std::uint64_t leaves, std::uint64_t keys) {
  const std::uint64_t k = std::min(keys, leaves);
  switch (s) {
    case Scheme::verkle: return detail::verkle_memory(leaves, k);
    case Scheme::merkle_naive: return detail::naive_memory(leaves, k);
    case Scheme::merkle_snark: {
      auto bc = build_branch_circuit(std::size_t(std::countr_zero(leaves)));
      // Gate count as the backend would pad it, without building the backend.
      std::size_t gates = bc.cs.size() + (bc.cs.num_variables() - bc.cs.num_public() - 1);
      std::size_t n = std::bit_ceil(gates);
      std::size_t proof = 224 + 96 * std::size_t(std::countr_zero(n));
      return detail::snark_memory(leaves, k, bc, n, proof);
    }
  }
  return 0;
}

struct BenchResult {
  std::vector<BenchRecord> records;
  /// True if a budget stopped the sweep before the last leaf count.
  bool truncated = false;
};

/// Runs the sweep described by `cfg`. Each leaf count gets one record. A
/// repetition that overruns the time budget is kept if it finished (and
/// dropped if it was cut short); either way the record is marked
/// time_budget and the sweep stops. Throws VerificationFailure if any
/// witness fails to verify and std::invalid_argument on a bad config.
inline BenchResult run(const BenchConfig& cfg, std::ostream* log = nullptr) {
  cfg.validate();
  BenchResult result;
  for (std::uint64_t n : cfg.schedule()) {
    BenchRecord rec;
    rec.scheme = cfg.scheme;
    rec.leaves = n;
    rec.keys_proven = std::min(cfg.keys, n);
    rec.seed = cfg.seed;
    rec.peak_mem_estimate = estimate_peak_memory(cfg.scheme, n, cfg.keys);

    if (rec.peak_mem_estimate > cfg.mem_budget_bytes) {
      rec.status = RunStatus::mem_budget;
      rec.timestamp_ms = detail::now_ms();
      if (log) *log << to_string(cfg.scheme) << " N=" << n << " skipped: memory estimate " << rec.peak_mem_estimate
                    << " exceeds budget\n";
      result.records.push_back(std::move(rec));
      result.truncated = true;
      break;
    }

    std::unique_ptr<detail::Workload> work;
    switch (cfg.scheme) {
      case Scheme::verkle: work = std::make_unique<detail::VerkleWorkload>(n, cfg.seed); break;
      case Scheme::merkle_naive: work = std::make_unique<detail::NaiveWorkload>(n, cfg.seed); break;
      case Scheme::merkle_snark: work = std::make_unique<detail::SnarkWorkload>(n, cfg.seed); break;
    }

    bool stop = false;
    for (unsigned start = 0; start < cfg.reps && !stop; start += cfg.parallel) {
      const unsigned end = std::min(cfg.reps, start + cfg.parallel);
      std::vector<std::future<RunOutcome>> jobs;
      for (unsigned r = start; r < end; ++r) {
        jobs.push_back(std::async(cfg.parallel > 1 ? std::launch::async : std::launch::deferred, [&, r] {
          auto rng = detail::stream(cfg.seed, n, detail::kKeyStream, r);
          return work->run(detail::sample_indices(n, cfg.keys, rng), cfg.time_budget_s);
        }));
      }
      for (unsigned r = start; r < end; ++r) {
        RunOutcome o = jobs[r - start].get();
        if (stop) continue;
        if (!o.completed) {
          stop = true;
          continue;
        }
        rec.witness_bytes.push_back(o.witness_bytes);
        rec.modeled_bytes.push_back(o.modeled_bytes);
        rec.prove_ns.push_back(o.prove_ns);
        rec.verify_ns.push_back(o.verify_ns);
        if (log) *log << to_string(cfg.scheme) << " N=" << n << " rep " << (r + 1) << "/" << cfg.reps
                      << " bytes=" << o.witness_bytes << " prove_ms=" << o.prove_ns / 1000000
                      << " verify_ms=" << o.verify_ns / 1000000 << "\n";
        if (double(o.prove_ns + o.verify_ns) / 1e9 > cfg.time_budget_s) stop = true;
      }
    }
    rec.status = stop ? RunStatus::time_budget : RunStatus::ok;
    rec.timestamp_ms = detail::now_ms();
    result.records.push_back(std::move(rec));
    if (stop) {
      result.truncated = true;
      break;
    }
  }
  return result;
}

}  // namespace witbench::bench

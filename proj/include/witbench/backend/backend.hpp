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

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "witbench/bytes.hpp"
#include "witbench/circuit/branch_circuit.hpp"
#include "witbench/circuit/r1cs.hpp"

namespace witbench {

enum class BackendTag : std::uint8_t { ipa = 1, mock = 2 };

inline const char* to_string(BackendTag t) { return t == BackendTag::ipa ? "ipa" : "mock"; }

inline Bytes encode_fields(std::span<const Fr> v) {
  Bytes out;
  out.reserve(v.size() * Fr::kBytes);
  ByteWriter w(out);
  for (const auto& x : v) w.field(x);
  return out;
}

/// nullopt unless exactly `count` canonical field elements.
inline std::optional<std::vector<Fr>> decode_fields(std::span<const std::uint8_t> in, std::size_t count) {
  if (in.size() != count * Fr::kBytes) return std::nullopt;
  ByteReader rd(in);
  std::vector<Fr> out(count);
  for (auto& x : out) {
    auto f = rd.field();
    if (!f) return std::nullopt;
    x = *f;
  }
  return out;
}

/// Proof for one branch circuit. Public inputs are carried separately from
/// the proof bytes and counted separately in size reports.
struct BranchProof {
  BackendTag tag = BackendTag::ipa;
  Bytes proof;
  Bytes public_inputs;

  std::size_t size_bytes() const { return 1 + 4 + proof.size() + 4 + public_inputs.size(); }

  /// tag (1 byte) || u32 len || proof || u32 len || public inputs.
  Bytes serialize() const {
    Bytes out;
    out.reserve(size_bytes());
    ByteWriter w(out);
    w.u8(std::uint8_t(tag));
    w.u32(std::uint32_t(proof.size()));
    w.bytes(proof);
    w.u32(std::uint32_t(public_inputs.size()));
    w.bytes(public_inputs);
    return out;
  }

  static std::optional<BranchProof> parse(std::span<const std::uint8_t> in) {
    ByteReader rd(in);
    BranchProof p;
    auto tag = rd.u8();
    if (!tag || (*tag != 1 && *tag != 2)) return std::nullopt;
    p.tag = BackendTag(*tag);
    for (Bytes* dst : {&p.proof, &p.public_inputs}) {
      auto len = rd.u32();
      if (!len) return std::nullopt;
      auto body = rd.take(*len);
      if (!body) return std::nullopt;
      dst->assign(body->begin(), body->end());
    }
    if (!rd.done()) return std::nullopt;
    return p;
  }
};

/// Proves satisfaction of one constraint system. Construction performs the
/// setup; the system must outlive the backend. Const members are safe to
/// call concurrently.
class ProverBackend {
 public:
  explicit ProverBackend(const ConstraintSystem& cs) : cs_(&cs) {}
  virtual ~ProverBackend() = default;

  const ConstraintSystem& cs() const { return *cs_; }
  virtual BackendTag tag() const = 0;

  /// nullopt when the backend detects an unsatisfied assignment.
  virtual std::optional<BranchProof> prove(const Assignment& w) const = 0;

  /// Looks only at the proof and public-input bytes.
  virtual Verdict verify(const BranchProof& proof) const = 0;

  /// prove followed by verify.
  bool accepts(const Assignment& w) const {
    auto p = prove(w);
    return p && verify(*p) == Verdict::accept;
  }

 protected:
  std::size_t num_private() const { return cs_->num_variables() - 1 - cs_->num_public(); }

 private:
  const ConstraintSystem* cs_;
};

/// Test oracle backend: the "proof" is the private part of the assignment
/// and verification re-runs is_satisfied. No cryptography.
class MockBackend final : public ProverBackend {
 public:
  using ProverBackend::ProverBackend;

  BackendTag tag() const override { return BackendTag::mock; }

  std::optional<BranchProof> prove(const Assignment& w) const override {
    if (w.size() != cs().num_variables()) throw std::invalid_argument("assignment length mismatch");
    const std::size_t pub = cs().num_public();
    BranchProof p;
    p.tag = BackendTag::mock;
    p.public_inputs = encode_fields(std::span(w).subspan(1, pub));
    p.proof = encode_fields(std::span(w).subspan(1 + pub));
    return p;
  }

  Verdict verify(const BranchProof& proof) const override {
    if (proof.tag != BackendTag::mock) return Verdict::malformed;
    auto pub = decode_fields(proof.public_inputs, cs().num_public());
    auto priv = decode_fields(proof.proof, num_private());
    if (!pub || !priv) return Verdict::malformed;
    Assignment w;
    w.reserve(cs().num_variables());
    w.push_back(Fr::one());
    w.insert(w.end(), pub->begin(), pub->end());
    w.insert(w.end(), priv->begin(), priv->end());
    return is_satisfied(cs(), w) ? Verdict::accept : Verdict::reject;
  }
};

/// One proof per branch against a common root, all with the circuit the
/// backend was set up for. Throws std::invalid_argument when the backend
/// belongs to another circuit, when a branch's depth differs from the
/// circuit's, or when a branch does not fold to the root.
inline std::vector<BranchProof> batch_prove(const ProverBackend& backend, const BranchCircuit& circuit, const Fr& root,
                                            std::span<const MerkleBranch> branches) {
  if (&backend.cs() != &circuit.cs) throw std::invalid_argument("backend was set up for a different circuit");
  for (const auto& b : branches) {
    if (b.depth() != circuit.depth) throw std::invalid_argument("mixed branch depths");
  }
  std::vector<BranchProof> out;
  out.reserve(branches.size());
  for (const auto& b : branches) {
    auto w = assign_branch(circuit, b, root);
    if (!is_satisfied(circuit.cs, w)) throw std::invalid_argument("branch does not fold to the root");
    auto p = backend.prove(w);
    if (!p) throw std::invalid_argument("branch does not fold to the root");
    out.push_back(std::move(*p));
  }
  return out;
}

}  // namespace witbench

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

#include <utility>

#include "witbench/algebra/polynomial.hpp"
#include "witbench/algebra/transcript.hpp"
#include "witbench/commitment/ipa.hpp"
#include "witbench/commitment/key.hpp"

namespace witbench {

/// Opening proofs at domain 256 run log2(256) rounds.
inline constexpr std::size_t kOpeningRounds = 8;

struct Opening {
  Fr y;
  OpeningProof proof;
};

/// Opens the committed polynomial at an arbitrary z.
inline Opening open(const CommitmentKey& key, const Polynomial& poly, const Fr& z, Transcript& tr) {
  if (poly.size() != CommitmentKey::kWidth) throw std::invalid_argument("open: expected 256 evaluations");
  const Fr y = lagrange_eval(poly, z);
  const GroupElement c = key.commit_point(poly.evaluations());
  auto b = key.domain().lagrange_coefficients(z);
  std::vector<Fr> a(poly.evaluations().begin(), poly.evaluations().end());
  OpeningProof proof = ipa_prove(tr, key.bases(), key.q(), c, std::move(a), std::move(b), z, y);
  return Opening{y, std::move(proof)};
}

inline Verdict verify_open(const CommitmentKey& key, const Commitment& com, const Fr& z, const Fr& y,
                           const OpeningProof& proof, Transcript& tr) {
  auto b = key.domain().lagrange_coefficients(z);
  return ipa_verify(tr, key.bases(), key.q(), com.point(), b, z, y, proof);
}

}  // namespace witbench

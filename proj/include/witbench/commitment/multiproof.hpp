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
#include <cstring>
#include <map>
#include <optional>
#include <span>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "witbench/algebra/polynomial.hpp"
#include "witbench/algebra/transcript.hpp"
#include "witbench/bytes.hpp"
#include "witbench/commitment/ipa.hpp"
#include "witbench/commitment/key.hpp"
#include "witbench/commitment/opening.hpp"

namespace witbench {

/// One claimed evaluation f(z) = y of a committed polynomial, prover side.
struct ProverQuery {
  const Polynomial* poly;
  Commitment commitment;
  Fr z;
  Fr y;
};

/// Verifier side of the same claim.
struct VerifierQuery {
  Commitment commitment;
  Fr z;
  Fr y;
};

/// Aggregated opening of many (commitment, z, y) claims.
///
/// Layout: tag (1 byte). Tag 0 is the empty-proof sentinel and ends the
/// encoding. Tag 1 is followed by D (48 bytes) and an 8-round opening proof,
/// 849 bytes in all regardless of the number of claims.
struct MultiProof {
  static constexpr std::size_t kEmptyBytes = 1;
  static constexpr std::size_t kBytes = 1 + GroupElement::kBytes + OpeningProof::serialized_size(kOpeningRounds);

  bool empty = true;
  GroupElement d;
  OpeningProof ipa;

  std::size_t size_bytes() const { return empty ? kEmptyBytes : kBytes; }

  void write(ByteWriter& w) const {
    if (empty) {
      w.u8(0);
      return;
    }
    w.u8(1);
    w.point(d);
    ipa.write(w);
  }

  Bytes serialize() const {
    Bytes out;
    ByteWriter w(out);
    write(w);
    return out;
  }

  static std::optional<MultiProof> read(ByteReader& rd) {
    auto tag = rd.u8();
    if (!tag) return std::nullopt;
    MultiProof p;
    if (*tag == 0) return p;
    if (*tag != 1) return std::nullopt;
    auto d = rd.point();
    if (!d) return std::nullopt;
    auto ipa = OpeningProof::read(rd, kOpeningRounds);
    if (!ipa) return std::nullopt;
    p.empty = false;
    p.d = *d;
    p.ipa = std::move(*ipa);
    return p;
  }

  static std::optional<MultiProof> parse(std::span<const std::uint8_t> in) {
    ByteReader rd(in);
    auto p = read(rd);
    if (!p || !rd.done()) return std::nullopt;
    return p;
  }
};

namespace multiproof_detail {

struct EncodingHash {
  std::size_t operator()(const Commitment::Encoding& e) const {
    std::size_t h;
    std::memcpy(&h, e.data(), sizeof(h));
    return h;
  }
};

// Queries are absorbed sorted by (commitment, z, y) so that the proof does
// not depend on the order the caller lists them in. Returns that order.
inline std::vector<std::size_t> absorb_queries(Transcript& tr, std::size_t n, auto&& get) {
  std::vector<std::tuple<Commitment::Encoding, Limbs, Limbs>> keys;
  keys.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [com, z, y] = get(i);
    keys.emplace_back(com.bytes(), z.to_limbs(), y.to_limbs());
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  tr.absorb_u64("mp.count", n);
  for (std::size_t i : order) {
    const auto& [com, z, y] = get(i);
    tr.absorb_encoded_point("mp.C", com.bytes());
    tr.absorb("mp.z", z);
    tr.absorb("mp.y", y);
  }
  return order;
}

inline std::vector<Fr> powers(const Fr& r, std::size_t n) {
  std::vector<Fr> out(n);
  Fr acc = Fr::one();
  for (auto& v : out) {
    v = acc;
    acc *= r;
  }
  return out;
}

// Evaluations of (f - y) / (X - z) over D; z need not lie in D.
inline std::vector<Fr> quotient(std::span<const Fr> f, const Fr& y, const Fr& z, const EvaluationDomain& d) {
  if (auto m = d.index_of(z)) return quotient_in_domain(f, y, *m, d);
  std::vector<Fr> inv(d.size());
  for (std::size_t j = 0; j < d.size(); ++j) inv[j] = d.point(j) - z;
  batch_invert<Fr>(inv);
  for (std::size_t j = 0; j < d.size(); ++j) inv[j] = (f[j] - y) * inv[j];
  return inv;
}

}  // namespace multiproof_detail

/// Aggregates every query into one opening. Queries are absorbed in
/// canonical order and r is drawn. With i the canonical rank,
/// g = sum r^i (f_i - y_i)/(X - z_i) is committed as D, t is drawn,
/// h = sum r^i f_i/(t - z_i) is committed as E, and E - D is opened at t to
/// sum r^i y_i/(t - z_i).
inline MultiProof multiprove(const CommitmentKey& key, std::span<const ProverQuery> queries, Transcript& tr) {
  using namespace multiproof_detail;
  const auto& dom = key.domain();
  const auto order = absorb_queries(tr, queries.size(), [&](std::size_t i) {
    return std::tie(queries[i].commitment, queries[i].z, queries[i].y);
  });
  if (queries.empty()) return MultiProof{};
  const Fr r = tr.challenge("mp.r");
  const auto rp = powers(r, queries.size());

  // Group by evaluation point: F_z = sum r^i f_i, Y_z = sum r^i y_i.
  std::map<Limbs, std::size_t> slot_of;
  std::vector<Fr> zs;
  std::vector<std::vector<Fr>> fz;
  std::vector<Fr> yz;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const auto& q = queries[order[i]];
    if (q.poly->size() != dom.size()) throw std::invalid_argument("multiprove: expected 256 evaluations");
    auto [it, fresh] = slot_of.try_emplace(q.z.to_limbs(), zs.size());
    if (fresh) {
      zs.push_back(q.z);
      fz.emplace_back(dom.size(), Fr::zero());
      yz.push_back(Fr::zero());
    }
    auto& acc = fz[it->second];
    const auto ev = q.poly->evaluations();
    for (std::size_t j = 0; j < dom.size(); ++j) {
      if (!ev[j].is_zero()) acc[j] += rp[i] * ev[j];
    }
    yz[it->second] += rp[i] * q.y;
  }

  std::vector<Fr> g(dom.size(), Fr::zero());
  for (std::size_t s = 0; s < zs.size(); ++s) {
    auto qz = quotient(fz[s], yz[s], zs[s], dom);
    for (std::size_t j = 0; j < dom.size(); ++j) g[j] += qz[j];
  }
  MultiProof proof;
  proof.empty = false;
  proof.d = key.commit_point(g);
  tr.absorb("mp.D", proof.d);
  const Fr t = tr.challenge("mp.t");

  std::vector<Fr> inv(zs.size());
  for (std::size_t s = 0; s < zs.size(); ++s) inv[s] = t - zs[s];
  batch_invert<Fr>(inv);
  std::vector<Fr> h(dom.size(), Fr::zero());
  Fr value = Fr::zero();
  for (std::size_t s = 0; s < zs.size(); ++s) {
    for (std::size_t j = 0; j < dom.size(); ++j) h[j] += inv[s] * fz[s][j];
    value += inv[s] * yz[s];
  }
  const GroupElement e = key.commit_point(h);
  tr.absorb("mp.E", e);

  std::vector<Fr> a(dom.size());
  for (std::size_t j = 0; j < dom.size(); ++j) a[j] = h[j] - g[j];
  proof.ipa = ipa_prove(tr, key.bases(), key.q(), e - proof.d, std::move(a), dom.lagrange_coefficients(t), t, value);
  return proof;
}

/// Accepts iff every query holds. Zero queries accept only the empty
/// sentinel.
inline Verdict verify_multiproof(const CommitmentKey& key, std::span<const VerifierQuery> queries,
                                 const MultiProof& proof, Transcript& tr) {
  using namespace multiproof_detail;
  const auto order = absorb_queries(tr, queries.size(), [&](std::size_t i) {
    return std::tie(queries[i].commitment, queries[i].z, queries[i].y);
  });
  if (queries.empty()) return proof.empty ? Verdict::accept : Verdict::reject;
  if (proof.empty) return Verdict::reject;
  const Fr r = tr.challenge("mp.r");
  tr.absorb("mp.D", proof.d);
  const Fr t = tr.challenge("mp.t");

  // Coefficient of commitment C_i in E is r^i / (t - z_i).
  std::map<Limbs, std::size_t> slot_of;
  std::vector<Fr> inv;
  std::vector<std::size_t> slot(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    auto [it, fresh] = slot_of.try_emplace(queries[i].z.to_limbs(), inv.size());
    if (fresh) inv.push_back(t - queries[i].z);
    slot[i] = it->second;
  }
  batch_invert<Fr>(inv);

  std::unordered_map<Commitment::Encoding, std::size_t, EncodingHash> com_index;
  std::vector<Fr> scalars;
  std::vector<GroupElement> points;
  Fr value = Fr::zero();
  Fr rp = Fr::one();
  for (std::size_t i : order) {
    const Fr c = rp * inv[slot[i]];
    value += c * queries[i].y;
    auto [it, fresh] = com_index.try_emplace(queries[i].commitment.bytes(), points.size());
    if (fresh) {
      scalars.push_back(c);
      points.push_back(queries[i].commitment.point());
    } else {
      scalars[it->second] += c;
    }
    rp *= r;
  }
  const GroupElement e = msm(scalars, points);
  tr.absorb("mp.E", e);
  const auto b = key.domain().lagrange_coefficients(t);
  return ipa_verify(tr, key.bases(), key.q(), e - proof.d, b, t, value, proof.ipa);
}

/// Parallel-list form: coms[i] opens at points[i] = (z_i, y_i).
inline Verdict verify_multiproof(const CommitmentKey& key, std::span<const Commitment> coms,
                                 std::span<const std::pair<Fr, Fr>> points, const MultiProof& proof,
                                 Transcript& tr) {
  if (coms.size() != points.size()) return Verdict::malformed;
  std::vector<VerifierQuery> q;
  q.reserve(coms.size());
  for (std::size_t i = 0; i < coms.size(); ++i) q.push_back({coms[i], points[i].first, points[i].second});
  return verify_multiproof(key, q, proof, tr);
}

}  // namespace witbench

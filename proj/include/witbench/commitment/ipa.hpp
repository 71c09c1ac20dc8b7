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

#include <bit>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "witbench/algebra/field.hpp"
#include "witbench/algebra/group.hpp"
#include "witbench/algebra/msm.hpp"
#include "witbench/algebra/transcript.hpp"
#include "witbench/bytes.hpp"

namespace witbench {

/// Inner-product argument that <a, b> = y for the committed vector a, with b
/// public. Per round: L_j, R_j; at the end: the folded scalar a.
///
/// Layout: L_0 || R_0 || ... || L_{k-1} || R_{k-1} || a, points 48 bytes and
/// the scalar 32 bytes.
struct OpeningProof {
  std::vector<GroupElement> l;
  std::vector<GroupElement> r;
  Fr a;

  std::size_t rounds() const { return l.size(); }
  static constexpr std::size_t serialized_size(std::size_t rounds) {
    return 2 * rounds * GroupElement::kBytes + Fr::kBytes;
  }

  void write(ByteWriter& w) const {
    std::vector<GroupElement> pts;
    pts.reserve(2 * l.size());
    for (std::size_t j = 0; j < l.size(); ++j) {
      pts.push_back(l[j]);
      pts.push_back(r[j]);
    }
    for (const auto& e : GroupElement::batch_to_bytes(pts)) w.bytes(e);
    w.field(a);
  }

  Bytes serialize() const {
    Bytes out;
    ByteWriter w(out);
    write(w);
    return out;
  }

  static std::optional<OpeningProof> read(ByteReader& rd, std::size_t rounds) {
    OpeningProof p;
    p.l.resize(rounds);
    p.r.resize(rounds);
    for (std::size_t j = 0; j < rounds; ++j) {
      auto lj = rd.point();
      if (!lj) return std::nullopt;
      auto rj = rd.point();
      if (!rj) return std::nullopt;
      p.l[j] = *lj;
      p.r[j] = *rj;
    }
    auto a = rd.field();
    if (!a) return std::nullopt;
    p.a = *a;
    return p;
  }

  static std::optional<OpeningProof> parse(std::span<const std::uint8_t> in, std::size_t rounds) {
    ByteReader rd(in);
    auto p = read(rd, rounds);
    if (!p || !rd.done()) return std::nullopt;
    return p;
  }
};

namespace ipa_detail {

inline Fr inner(std::span<const Fr> a, std::span<const Fr> b) {
  Fr acc = Fr::zero();
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

/// s_i = prod_j x_j^{-bit}, round 0 selecting the most significant bit of i.
inline std::vector<Fr> folding_scalars(std::span<const Fr> xinv) {
  std::vector<Fr> s{Fr::one()};
  for (const auto& xi : xinv) {
    std::vector<Fr> next(2 * s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      next[2 * i] = s[i];
      next[2 * i + 1] = s[i] * xi;
    }
    s = std::move(next);
  }
  return s;
}

}  // namespace ipa_detail

/// Proves <a, b> = y where C = <a, G>. The statement (C, z, y) is absorbed
/// first; z only labels the evaluation point. |G| must be a power of two.
inline OpeningProof ipa_prove(Transcript& tr, std::span<const GroupElement> bases, const GroupElement& q,
                              const GroupElement& commitment, std::vector<Fr> a, std::vector<Fr> b, const Fr& z,
                              const Fr& y) {
  const std::size_t n = bases.size();
  if (a.size() != n || b.size() != n || !std::has_single_bit(n)) {
    throw std::invalid_argument("ipa_prove: vector sizes must match and be a power of two");
  }
  tr.absorb("ipa.C", commitment);
  tr.absorb("ipa.z", z);
  tr.absorb("ipa.y", y);
  const GroupElement qw = q.mul(tr.challenge("ipa.w"));

  std::vector<GroupElement> g(bases.begin(), bases.end());
  OpeningProof proof;
  for (std::size_t m = n; m > 1; m /= 2) {
    const std::size_t h = m / 2;
    std::span<const Fr> a_lo(a.data(), h), a_hi(a.data() + h, h);
    std::span<const Fr> b_lo(b.data(), h), b_hi(b.data() + h, h);
    std::span<const GroupElement> g_lo(g.data(), h), g_hi(g.data() + h, h);
    GroupElement l = msm(a_lo, g_hi) + qw.mul(ipa_detail::inner(a_lo, b_hi));
    GroupElement r = msm(a_hi, g_lo) + qw.mul(ipa_detail::inner(a_hi, b_lo));
    tr.absorb("ipa.L", l);
    tr.absorb("ipa.R", r);
    proof.l.push_back(l);
    proof.r.push_back(r);
    const Fr x = tr.challenge("ipa.x");
    const Fr xinv = x.inverse();
    for (std::size_t i = 0; i < h; ++i) {
      a[i] = a[i] + x * a[h + i];
      b[i] = b[i] + xinv * b[h + i];
      g[i] = g[i] + g[h + i].mul(xinv);
    }
    a.resize(h);
    b.resize(h);
    g.resize(h);
  }
  proof.a = a[0];
  return proof;
}

/// Checks C + sum(x_j^-1 L_j + x_j R_j) + (y - a b_f) wQ - a G_f = 0 as a
/// single multi-scalar multiplication.
inline Verdict ipa_verify(Transcript& tr, std::span<const GroupElement> bases, const GroupElement& q,
                          const GroupElement& commitment, std::span<const Fr> b, const Fr& z, const Fr& y,
                          const OpeningProof& proof) {
  const std::size_t n = bases.size();
  if (b.size() != n || !std::has_single_bit(n)) return Verdict::malformed;
  const std::size_t k = std::size_t(std::countr_zero(n));
  if (proof.l.size() != k || proof.r.size() != k) return Verdict::malformed;

  tr.absorb("ipa.C", commitment);
  tr.absorb("ipa.z", z);
  tr.absorb("ipa.y", y);
  const Fr w = tr.challenge("ipa.w");

  std::vector<Fr> xs(k), xinv(k);
  for (std::size_t j = 0; j < k; ++j) {
    tr.absorb("ipa.L", proof.l[j]);
    tr.absorb("ipa.R", proof.r[j]);
    xs[j] = tr.challenge("ipa.x");
    xinv[j] = xs[j];
  }
  batch_invert<Fr>(xinv);
  const std::vector<Fr> s = ipa_detail::folding_scalars(xinv);
  const Fr b_f = ipa_detail::inner(s, b);

  std::vector<Fr> scalars;
  std::vector<GroupElement> points;
  scalars.reserve(n + 2 * k + 2);
  points.reserve(n + 2 * k + 2);
  scalars.push_back(Fr::one());
  points.push_back(commitment);
  for (std::size_t j = 0; j < k; ++j) {
    scalars.push_back(xinv[j]);
    points.push_back(proof.l[j]);
    scalars.push_back(xs[j]);
    points.push_back(proof.r[j]);
  }
  scalars.push_back(w * (y - proof.a * b_f));
  points.push_back(q);
  for (std::size_t i = 0; i < n; ++i) {
    scalars.push_back(-(proof.a * s[i]));
    points.push_back(bases[i]);
  }
  return msm(scalars, points).is_identity() ? Verdict::accept : Verdict::reject;
}

}  // namespace witbench

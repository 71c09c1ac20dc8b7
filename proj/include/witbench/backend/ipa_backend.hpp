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
#include <bit>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "witbench/algebra/field.hpp"
#include "witbench/algebra/group.hpp"
#include "witbench/algebra/msm.hpp"
#include "witbench/algebra/transcript.hpp"
#include "witbench/backend/backend.hpp"
#include "witbench/circuit/r1cs.hpp"

namespace witbench {

namespace detail {

/// Generators G_i, H_i and Q by hash-to-group under fixed tags, grown on
/// demand and shared by every backend instance.
class CircuitGenerators {
 public:
  static CircuitGenerators& instance() {
    static CircuitGenerators g;
    return g;
  }

  /// First n of each; the returned spans stay valid for the process lifetime
  /// because storage is reserved up front.
  void get(std::size_t n, std::span<const GroupElement>& g, std::span<const GroupElement>& h) {
    std::lock_guard lock(mu_);
    if (n > kMax) throw std::invalid_argument("circuit too large for the generator pool");
    while (g_.size() < n) {
      g_.push_back(GroupElement::hash_to_group("witbench.r1cs.G", g_.size()));
      h_.push_back(GroupElement::hash_to_group("witbench.r1cs.H", h_.size()));
    }
    g = std::span<const GroupElement>(g_.data(), n);
    h = std::span<const GroupElement>(h_.data(), n);
  }

  const GroupElement& q() const { return q_; }

 private:
  static constexpr std::size_t kMax = std::size_t(1) << 16;

  CircuitGenerators() : q_(GroupElement::hash_to_group("witbench.r1cs.Q", 0)) {
    g_.reserve(kMax);
    h_.reserve(kMax);
  }

  std::mutex mu_;
  std::vector<GroupElement> g_, h_;
  GroupElement q_;
};

inline Fr inner_product(std::span<const Fr> a, std::span<const Fr> b) {
  Fr acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace detail

/// Transparent argument for R1CS satisfaction in the style of the
/// Bulletproofs arithmetic-circuit protocol, without blinding.
///
/// Setup turns every constraint j into a multiplication gate
/// (aL_j, aR_j, aO_j) = (A_j.w, B_j.w, C_j.w) plus linear rows tying the wires
/// to the assignment. A private variable is wired to the output of the
/// first constraint whose c is exactly that variable; any other private
/// variable gets a gate v * 1 = v of its own. Public inputs and the constant
/// enter only the right-hand sides of the linear rows.
///
/// The prover commits A_I = <aL, G> + <aR, H> and A_O = <aO, G>, sends the
/// degree-1 and degree-3 coefficients of t(X) = <l(X), r(X)> in the clear
/// (the verifier derives the degree-2 one) and finishes with an inner-product
/// argument on bases (G, y^-i H_i). That argument folds
/// a' = u a_lo + a_hi, b' = b_lo + u b_hi, G' = G_lo + u G_hi,
/// H' = u H_lo + H_hi with 128-bit challenges u, so no inverses appear and
/// generator folding costs half-length scalar multiplications.
///
/// Proof layout: A_I, A_O (48 bytes each), t1, t3 (32 each),
/// log2(n) pairs (L, R), final a and b (32 each).
class IpaBackend final : public ProverBackend {
 public:
  explicit IpaBackend(const ConstraintSystem& cs) : ProverBackend(cs), digest_(cs.digest()) {
    const std::uint32_t nv = cs.num_variables();
    constexpr std::uint32_t kUnset = ~0u;
    std::vector<std::uint32_t> wire(nv, kUnset);  // wire id = kind * n + gate, kind 0/1/2 = L/R/O
    const std::size_t m = cs.size();
    std::vector<bool> defines(m, false);
    // Gate numbering does not depend on n, so record (kind, gate) first.
    std::vector<std::pair<std::uint8_t, std::uint32_t>> site(nv, {0, kUnset});
    for (std::size_t j = 0; j < m; ++j) {
      const auto& c = cs.constraints()[j].c.terms();
      if (c.size() == 1 && c[0].second == Fr::one() && cs.is_private(c[0].first) && site[c[0].first].second == kUnset) {
        site[c[0].first] = {2, std::uint32_t(j)};
        defines[j] = true;
      }
    }
    std::vector<std::uint32_t> extra;
    for (std::uint32_t v = cs.num_public() + 1; v < nv; ++v) {
      if (site[v].second == kUnset) {
        site[v] = {0, std::uint32_t(m + extra.size())};
        extra.push_back(v);
      }
    }
    gates_ = m + extra.size();
    n_ = std::max<std::size_t>(2, std::bit_ceil(gates_));
    rounds_ = std::size_t(std::countr_zero(n_));
    for (std::uint32_t v = 0; v < nv; ++v) {
      if (site[v].second != kUnset) wire[v] = site[v].first * std::uint32_t(n_) + site[v].second;
    }

    auto add_row = [&](std::uint32_t self, const LC* lc) {
      row_start_.push_back(std::uint32_t(wire_terms_.size()));
      pub_start_.push_back(std::uint32_t(pub_terms_.size()));
      wire_terms_.emplace_back(self, Fr::one());
      if (!lc) return;
      for (const auto& [v, k] : lc->terms()) {
        if (cs.is_private(v)) {
          wire_terms_.emplace_back(wire[v], -k);
        } else {
          pub_terms_.emplace_back(v, k);
        }
      }
    };
    for (std::size_t j = 0; j < m; ++j) {
      const auto& con = cs.constraints()[j];
      const auto g = std::uint32_t(j);
      add_row(g, &con.a);
      add_row(std::uint32_t(n_) + g, &con.b);
      if (!defines[j]) add_row(2 * std::uint32_t(n_) + g, &con.c);
    }
    for (std::size_t e = 0; e < extra.size(); ++e) {
      const auto g = std::uint32_t(m + e);
      // aR = 1
      add_row(std::uint32_t(n_) + g, nullptr);
      pub_terms_.emplace_back(ConstraintSystem::kOne, Fr::one());
      // aO - aL = 0
      add_row(2 * std::uint32_t(n_) + g, nullptr);
      wire_terms_.emplace_back(g, -Fr::one());
    }
    extra_ = std::move(extra);
    row_start_.push_back(std::uint32_t(wire_terms_.size()));
    pub_start_.push_back(std::uint32_t(pub_terms_.size()));
    detail::CircuitGenerators::instance().get(n_, g_, h_);
  }

  BackendTag tag() const override { return BackendTag::ipa; }

  /// Multiplication gates before and after padding to a power of two.
  std::size_t gates() const { return gates_; }
  std::size_t padded_gates() const { return n_; }
  std::size_t rounds() const { return rounds_; }
  std::size_t rows() const { return row_start_.size() - 1; }
  std::size_t proof_bytes() const { return 2 * GroupElement::kBytes + 2 * Fr::kBytes + rounds_ * 2 * GroupElement::kBytes + 2 * Fr::kBytes; }

  std::optional<BranchProof> prove(const Assignment& w) const override {
    if (w.size() != cs().num_variables()) throw std::invalid_argument("assignment length mismatch");
    if (!is_satisfied(cs(), w)) return std::nullopt;
    return prove_unchecked(w);
  }

  /// Runs the prover on any assignment; the result only verifies when the
  /// assignment satisfies the system.
  BranchProof prove_unchecked(const Assignment& w) const {
    if (w.size() != cs().num_variables()) throw std::invalid_argument("assignment length mismatch");
    const std::size_t n = n_;
    std::vector<Fr> aL(n), aR(n), aO(n);
    const auto& cons = cs().constraints();
    for (std::size_t j = 0; j < cons.size(); ++j) {
      aL[j] = cons[j].a.evaluate(w);
      aR[j] = cons[j].b.evaluate(w);
      aO[j] = cons[j].c.evaluate(w);
    }
    for (std::size_t e = 0; e < extra_.size(); ++e) {
      const std::size_t g = cons.size() + e;
      aL[g] = w[extra_[e]];
      aR[g] = Fr::one();
      aO[g] = w[extra_[e]];
    }

    BranchProof out;
    out.tag = BackendTag::ipa;
    const auto pub = public_inputs(cs(), w);
    out.public_inputs = encode_fields(pub);
    Bytes& proof = out.proof;
    proof.reserve(proof_bytes());
    ByteWriter wr(proof);

    Transcript tr = start(pub);
    std::vector<Fr> lr(aL);
    lr.insert(lr.end(), aR.begin(), aR.end());
    std::vector<GroupElement> gh(g_.begin(), g_.end());
    gh.insert(gh.end(), h_.begin(), h_.end());
    const GroupElement a_i = msm(lr, gh), a_o = msm(aO, g_);
    const auto enc = GroupElement::batch_to_bytes(std::vector<GroupElement>{a_i, a_o});
    tr.absorb_encoded_point("r1cs.A_I", enc[0]);
    tr.absorb_encoded_point("r1cs.A_O", enc[1]);
    wr.bytes(enc[0]);
    wr.bytes(enc[1]);
    const Fr y = tr.challenge("r1cs.y"), z = tr.challenge("r1cs.z");
    const Weights wt = weights(z, pub);
    const auto [ypow, yinv] = powers(y);

    std::vector<Fr> l1(n), r0(n), r1(n);
    for (std::size_t i = 0; i < n; ++i) {
      l1[i] = aL[i] + yinv[i] * wt.r[i];
      r0[i] = wt.o[i] - ypow[i];
      r1[i] = ypow[i] * aR[i] + wt.l[i];
    }
    const Fr t1 = detail::inner_product(l1, r0), t3 = detail::inner_product(aO, r1);
    tr.absorb("r1cs.t1", t1);
    tr.absorb("r1cs.t3", t3);
    wr.field(t1);
    wr.field(t3);
    const Fr x = tr.challenge("r1cs.x"), x2 = x * x;
    std::vector<Fr> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = x * l1[i] + x2 * aO[i];
      b[i] = r0[i] + x * r1[i];
    }
    tr.absorb("r1cs.t", detail::inner_product(a, b));
    const GroupElement qw = q().mul(tr.challenge("r1cs.w"));

    // hv holds the folded (y^-i H_i) bases. The first round reads H and the
    // y^-i factors directly and folds with a joint multiplication, so the
    // rescaled bases are never materialised at full length.
    std::vector<GroupElement> gv(g_.begin(), g_.end()), hv;
    for (std::size_t len = n; len > 1; len /= 2) {
      const std::size_t h = len / 2;
      const bool first = len == n;
      std::span<const Fr> alo(a.data(), h), ahi(a.data() + h, h), blo(b.data(), h), bhi(b.data() + h, h);
      std::vector<Fr> sl(alo.begin(), alo.end()), sr(ahi.begin(), ahi.end());
      for (std::size_t i = 0; i < h; ++i) sl.push_back(first ? bhi[i] * yinv[i] : bhi[i]);
      for (std::size_t i = 0; i < h; ++i) sr.push_back(first ? blo[i] * yinv[h + i] : blo[i]);
      sl.push_back(detail::inner_product(alo, bhi));
      sr.push_back(detail::inner_product(ahi, blo));
      std::span<const GroupElement> hs = first ? h_ : std::span<const GroupElement>(hv);
      std::vector<GroupElement> bl(gv.begin() + h, gv.begin() + len), br(gv.begin(), gv.begin() + h);
      bl.insert(bl.end(), hs.begin(), hs.begin() + h);
      br.insert(br.end(), hs.begin() + h, hs.begin() + len);
      bl.push_back(qw);
      br.push_back(qw);
      const auto lr_enc = GroupElement::batch_to_bytes(std::vector<GroupElement>{msm(sl, bl), msm(sr, br)});
      tr.absorb_encoded_point("r1cs.L", lr_enc[0]);
      tr.absorb_encoded_point("r1cs.R", lr_enc[1]);
      wr.bytes(lr_enc[0]);
      wr.bytes(lr_enc[1]);
      const Fr u = short_challenge(tr);
      if (first) {
        hv.resize(h);
        for (std::size_t i = 0; i < h; ++i) hv[i] = GroupElement::mul2(u * yinv[i], h_[i], yinv[h + i], h_[h + i]);
      } else {
        for (std::size_t i = 0; i < h; ++i) hv[i] = hv[i].mul(u) + hv[h + i];
      }
      for (std::size_t i = 0; i < h; ++i) {
        a[i] = u * a[i] + a[h + i];
        b[i] = b[i] + u * b[h + i];
        gv[i] = gv[i] + gv[h + i].mul(u);
      }
    }
    wr.field(a[0]);
    wr.field(b[0]);
    return out;
  }

  Verdict verify(const BranchProof& bp) const override {
    if (bp.tag != BackendTag::ipa || bp.proof.size() != proof_bytes()) return Verdict::malformed;
    auto pub = decode_fields(bp.public_inputs, cs().num_public());
    if (!pub) return Verdict::malformed;
    const std::size_t n = n_, k = rounds_;
    ByteReader rd(bp.proof);
    std::vector<GroupElement> pts;  // A_I, A_O, L_0, R_0, ...
    std::vector<std::span<const std::uint8_t>> raw;
    auto read_point = [&]() {
      auto s = *rd.take(GroupElement::kBytes);
      auto p = GroupElement::from_bytes(s);
      raw.push_back(s);
      if (p) pts.push_back(*p);
      return bool(p);
    };
    if (!read_point() || !read_point()) return Verdict::malformed;
    auto t1 = rd.field(), t3 = rd.field();
    if (!t1 || !t3) return Verdict::malformed;
    for (std::size_t j = 0; j < 2 * k; ++j) {
      if (!read_point()) return Verdict::malformed;
    }
    auto fa = rd.field(), fb = rd.field();
    if (!fa || !fb) return Verdict::malformed;

    Transcript tr = start(*pub);
    tr.absorb_encoded_point("r1cs.A_I", raw[0]);
    tr.absorb_encoded_point("r1cs.A_O", raw[1]);
    const Fr y = tr.challenge("r1cs.y"), z = tr.challenge("r1cs.z");
    tr.absorb("r1cs.t1", *t1);
    tr.absorb("r1cs.t3", *t3);
    const Fr x = tr.challenge("r1cs.x"), x2 = x * x;
    const Weights wt = weights(z, *pub);
    const auto [ypow, yinv] = powers(y);
    Fr delta;
    for (std::size_t i = 0; i < n; ++i) delta += yinv[i] * wt.r[i] * wt.l[i];
    const Fr t_hat = *t1 * x + (wt.kappa + delta) * x2 + *t3 * x2 * x;
    tr.absorb("r1cs.t", t_hat);
    const Fr w = tr.challenge("r1cs.w");
    std::vector<Fr> u(k);
    for (std::size_t j = 0; j < k; ++j) {
      tr.absorb_encoded_point("r1cs.L", raw[2 + 2 * j]);
      tr.absorb_encoded_point("r1cs.R", raw[3 + 2 * j]);
      u[j] = short_challenge(tr);
    }

    // sG_i multiplies u_j for every round j whose bit of i selects the high
    // half; sH_i for every round selecting the low half. Round 0 is the MSB.
    std::vector<Fr> sg{Fr::one()}, sh{Fr::one()};
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<Fr> ng(2 * sg.size()), nh(2 * sh.size());
      for (std::size_t i = 0; i < sg.size(); ++i) {
        ng[2 * i] = sg[i];
        ng[2 * i + 1] = sg[i] * u[j];
        nh[2 * i] = sh[i] * u[j];
        nh[2 * i + 1] = sh[i];
      }
      sg = std::move(ng);
      sh = std::move(nh);
    }
    Fr x_all = Fr::one();
    for (const auto& v : u) x_all *= v;

    std::vector<Fr> scalars;
    std::vector<GroupElement> bases;
    scalars.reserve(2 * n + 2 * k + 3);
    bases.reserve(2 * n + 2 * k + 3);
    const Fr xx = x_all * x;
    for (std::size_t i = 0; i < n; ++i) {
      scalars.push_back(*fa * sg[i] - xx * yinv[i] * wt.r[i]);
      bases.push_back(g_[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      scalars.push_back(*fb * sh[i] * yinv[i] - x_all * (yinv[i] * (x * wt.l[i] + wt.o[i]) - Fr::one()));
      bases.push_back(h_[i]);
    }
    scalars.push_back(w * (*fa * *fb - x_all * t_hat));
    bases.push_back(q());
    scalars.push_back(-xx);
    bases.push_back(pts[0]);
    scalars.push_back(-xx * x);
    bases.push_back(pts[1]);
    Fr c = Fr::one();  // product of u_i for i > j
    for (std::size_t j = k; j-- > 0;) {
      scalars.push_back(-c * u[j] * u[j]);
      bases.push_back(pts[2 + 2 * j]);
      scalars.push_back(-c);
      bases.push_back(pts[3 + 2 * j]);
      c *= u[j];
    }
    return msm(scalars, bases).is_identity() ? Verdict::accept : Verdict::reject;
  }

 private:
  struct Weights {
    std::vector<Fr> l, r, o;  // z-weighted column sums of the linear rows
    Fr kappa;                 // z-weighted right-hand side
  };

  const GroupElement& q() const { return detail::CircuitGenerators::instance().q(); }

  Transcript start(std::span<const Fr> pub) const {
    Transcript tr("witbench.r1cs.ipa");
    tr.absorb_bytes("r1cs.cs", digest_);
    tr.absorb_u64("r1cs.n", n_);
    for (const auto& p : pub) tr.absorb("r1cs.pub", p);
    return tr;
  }

  static Fr short_challenge(Transcript& tr) {
    const Limbs l = tr.challenge("r1cs.u").to_limbs();
    return Fr::from_canonical_limbs({l[0], l[1], 0, 0});
  }

  std::pair<std::vector<Fr>, std::vector<Fr>> powers(const Fr& y) const {
    std::vector<Fr> p(n_), q(n_);
    const Fr yi = y.inverse();
    p[0] = q[0] = Fr::one();
    for (std::size_t i = 1; i < n_; ++i) {
      p[i] = p[i - 1] * y;
      q[i] = q[i - 1] * yi;
    }
    return {std::move(p), std::move(q)};
  }

  Weights weights(const Fr& z, std::span<const Fr> pub) const {
    Weights wt{std::vector<Fr>(n_), std::vector<Fr>(n_), std::vector<Fr>(n_), Fr::zero()};
    std::vector<Fr>* col[3] = {&wt.l, &wt.r, &wt.o};
    Fr zq = z;
    for (std::size_t row = 0; row + 1 < row_start_.size(); ++row, zq *= z) {
      for (std::uint32_t t = row_start_[row]; t < row_start_[row + 1]; ++t) {
        const auto [id, k] = wire_terms_[t];
        (*col[id / n_])[id % n_] += zq * k;
      }
      Fr rhs;
      for (std::uint32_t t = pub_start_[row]; t < pub_start_[row + 1]; ++t) {
        const auto [v, k] = pub_terms_[t];
        rhs += v == ConstraintSystem::kOne ? k : k * pub[v - 1];
      }
      wt.kappa += zq * rhs;
    }
    return wt;
  }

  Digest digest_;
  std::size_t gates_ = 0, n_ = 0, rounds_ = 0;
  std::vector<std::uint32_t> extra_;
  std::vector<std::uint32_t> row_start_, pub_start_;
  std::vector<std::pair<std::uint32_t, Fr>> wire_terms_;
  std::vector<std::pair<std::uint32_t, Fr>> pub_terms_;
  std::span<const GroupElement> g_, h_;
};

}  // namespace witbench

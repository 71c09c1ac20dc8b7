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
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "witbench/algebra/field.hpp"
#include "witbench/algebra/hash.hpp"

namespace witbench {

// Bandersnatch: -5x^2 + y^2 = 1 + d x^2 y^2 over Fq, cofactor 4.
//
// GroupElement is the Banderwagon quotient of the doubled points 2E by the
// 2-torsion point (0,-1): (x,y) and (-x,-y) name the same element. The
// quotient has prime order r = |Fr|, so every decodable encoding is a valid
// group element and no cofactor handling leaks into the protocols.
namespace curve {

inline const Fq& edwards_d() {
  static const Fq d = Fq::from_canonical_limbs(
      {0xb369f2f5188d58e7ULL, 0xcb66677177e54f92ULL, 0xc66e3bf86be3b6d8ULL, 0x6389c12633c267cbULL});
  return d;
}

// a = -5, so a*v = -(4v + v).
inline Fq mul_by_a(const Fq& v) {
  Fq v4 = v.dbl().dbl();
  return -(v4 + v);
}

}  // namespace curve

/// Precomputed affine point used by fixed-base tables: (x, y, d*x*y).
struct AffineNiels {
  Fq x;
  Fq y;
  Fq dxy;
};

class GroupElement {
 public:
  /// Serialized width: 32-byte little-endian x coordinate followed by 16
  /// zero bytes. Decoding rejects any nonzero padding byte.
  static constexpr std::size_t kBytes = 48;
  static constexpr std::size_t kCoordBytes = 32;

  /// Identity.
  GroupElement() : x_(Fq::zero()), y_(Fq::one()), t_(Fq::zero()), z_(Fq::one()) {}

  static GroupElement identity() { return GroupElement(); }

  static const GroupElement& generator() {
    static const GroupElement g = from_affine(
        Fq::from_canonical_limbs({0xe1e71866a252ae18ULL, 0x2b79c022ad998465ULL,
                                  0x743711777bbe42f3ULL, 0x29c132cc2c0b34c5ULL}),
        Fq::from_canonical_limbs({0x5e3167b6cc974166ULL, 0x358cad81eee46460ULL,
                                  0x157d8b50badcd586ULL, 0x2a6c669eda123e0fULL}));
    return g;
  }

  static GroupElement from_affine(const Fq& x, const Fq& y) {
    GroupElement p;
    p.x_ = x;
    p.y_ = y;
    p.t_ = x * y;
    p.z_ = Fq::one();
    return p;
  }

  static GroupElement from_niels(const AffineNiels& n) { return from_affine(n.x, n.y); }

  bool is_on_curve() const {
    // Projective: (a X^2 + Y^2) Z^2 = Z^4 + d X^2 Y^2, plus T Z = X Y.
    Fq xx = x_.square(), yy = y_.square(), zz = z_.square();
    Fq lhs = (curve::mul_by_a(xx) + yy) * zz;
    Fq rhs = zz.square() + curve::edwards_d() * xx * yy;
    return lhs == rhs && t_ * z_ == x_ * y_;
  }

  bool is_identity() const { return x_.is_zero(); }

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.x_ * b.y_ == b.x_ * a.y_;
  }

  friend GroupElement operator+(const GroupElement& p, const GroupElement& q) {
    // add-2008-hwcd, unified.
    Fq a = p.x_ * q.x_;
    Fq b = p.y_ * q.y_;
    Fq c = curve::edwards_d() * p.t_ * q.t_;
    Fq d = p.z_ * q.z_;
    Fq e = (p.x_ + p.y_) * (q.x_ + q.y_) - a - b;
    Fq f = d - c;
    Fq g = d + c;
    Fq h = b - curve::mul_by_a(a);
    return from_extended(e * f, g * h, e * h, f * g);
  }

  GroupElement operator-() const {
    GroupElement r = *this;
    r.x_ = -r.x_;
    r.t_ = -r.t_;
    return r;
  }

  friend GroupElement operator-(const GroupElement& p, const GroupElement& q) { return p + (-q); }

  GroupElement& operator+=(const GroupElement& o) { return *this = *this + o; }
  GroupElement& operator-=(const GroupElement& o) { return *this = *this - o; }

  /// Mixed addition with a precomputed affine point.
  GroupElement add_niels(const AffineNiels& q) const {
    Fq a = x_ * q.x;
    Fq b = y_ * q.y;
    Fq c = t_ * q.dxy;
    Fq e = (x_ + y_) * (q.x + q.y) - a - b;
    Fq f = z_ - c;
    Fq g = z_ + c;
    Fq h = b - curve::mul_by_a(a);
    return from_extended(e * f, g * h, e * h, f * g);
  }

  GroupElement sub_niels(const AffineNiels& q) const {
    return add_niels(AffineNiels{-q.x, q.y, -q.dxy});
  }

  GroupElement dbl() const {
    // dbl-2008-hwcd.
    Fq a = x_.square();
    Fq b = y_.square();
    Fq c = z_.square().dbl();
    Fq d = curve::mul_by_a(a);
    Fq e = (x_ + y_).square() - a - b;
    Fq g = d + b;
    Fq f = g - c;
    Fq h = d - b;
    return from_extended(e * f, g * h, e * h, f * g);
  }

  /// Variable-base scalar multiplication, 4-bit signed window.
  GroupElement mul(const Fr& k) const {
    auto digits = signed_digits(k.to_limbs(), 4);
    std::array<GroupElement, 8> table;  // table[i] = (i+1)P
    table[0] = *this;
    table[1] = dbl();
    for (int i = 2; i < 8; ++i) table[i] = table[i - 1] + *this;
    std::size_t top = digits.size();
    while (top > 0 && digits[top - 1] == 0) --top;
    GroupElement acc;
    for (std::size_t i = top; i-- > 0;) {
      for (int j = 0; j < 4; ++j) acc = acc.dbl();
      int dgt = digits[i];
      if (dgt > 0) acc += table[dgt - 1];
      if (dgt < 0) acc -= table[-dgt - 1];
    }
    return acc;
  }

  friend GroupElement operator*(const Fr& k, const GroupElement& p) { return p.mul(k); }

  /// a * p + b * q sharing one doubling chain.
  static GroupElement mul2(const Fr& a, const GroupElement& p, const Fr& b, const GroupElement& q) {
    auto da = signed_digits(a.to_limbs(), 4), db = signed_digits(b.to_limbs(), 4);
    std::array<GroupElement, 8> tp, tq;
    tp[0] = p;
    tq[0] = q;
    tp[1] = p.dbl();
    tq[1] = q.dbl();
    for (int i = 2; i < 8; ++i) {
      tp[i] = tp[i - 1] + p;
      tq[i] = tq[i - 1] + q;
    }
    std::size_t top = da.size();
    while (top > 0 && da[top - 1] == 0 && db[top - 1] == 0) --top;
    GroupElement acc;
    for (std::size_t i = top; i-- > 0;) {
      for (int j = 0; j < 4; ++j) acc = acc.dbl();
      if (da[i] > 0) acc += tp[da[i] - 1];
      if (da[i] < 0) acc -= tp[-da[i] - 1];
      if (db[i] > 0) acc += tq[db[i] - 1];
      if (db[i] < 0) acc -= tq[-db[i] - 1];
    }
    return acc;
  }

  /// Affine coordinates of the Banderwagon representative with the
  /// lexicographically largest y; stable across equal elements.
  std::pair<Fq, Fq> canonical_affine() const {
    Fq zinv = z_.inverse();
    Fq x = x_ * zinv;
    Fq y = y_ * zinv;
    if (!y.is_lexicographically_largest()) {
      x = -x;
      y = -y;
    }
    return {x, y};
  }

  AffineNiels to_niels() const {
    auto [x, y] = canonical_affine();
    return AffineNiels{x, y, curve::edwards_d() * x * y};
  }

  std::array<std::uint8_t, kBytes> to_bytes() const {
    std::array<std::uint8_t, kBytes> out{};
    auto [x, y] = canonical_affine();
    x.write_bytes(out.data());
    return out;
  }

  void write_bytes(std::uint8_t* out) const {
    auto b = to_bytes();
    std::copy(b.begin(), b.end(), out);
  }

  /// Encodes many points with one shared inversion.
  static std::vector<std::array<std::uint8_t, kBytes>> batch_to_bytes(
      std::span<const GroupElement> points) {
    std::vector<Fq> zs(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) zs[i] = points[i].z_;
    batch_invert<Fq>(zs);
    std::vector<std::array<std::uint8_t, kBytes>> out(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      Fq x = points[i].x_ * zs[i];
      Fq y = points[i].y_ * zs[i];
      if (!y.is_lexicographically_largest()) x = -x;
      out[i] = {};
      x.write_bytes(out[i].data());
    }
    return out;
  }

  /// Precomputed affine forms for many points with one shared inversion.
  static std::vector<AffineNiels> batch_to_niels(std::span<const GroupElement> points) {
    std::vector<Fq> zs(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) zs[i] = points[i].z_;
    batch_invert<Fq>(zs);
    std::vector<AffineNiels> out(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      Fq x = points[i].x_ * zs[i];
      Fq y = points[i].y_ * zs[i];
      out[i] = AffineNiels{x, y, curve::edwards_d() * x * y};
    }
    return out;
  }

  /// nullopt for non-canonical, off-curve or outside-subgroup encodings.
  static std::optional<GroupElement> from_bytes(std::span<const std::uint8_t> b) {
    if (b.size() != kBytes) return std::nullopt;
    for (std::size_t i = kCoordBytes; i < kBytes; ++i) {
      if (b[i] != 0) return std::nullopt;
    }
    auto x = Fq::from_bytes(b.first(kCoordBytes));
    if (!x) return std::nullopt;
    return from_x(*x);
  }

  /// Decodes an x coordinate: requires 1 - a x^2 to be a square (membership
  /// in 2E) and a curve point above x.
  static std::optional<GroupElement> from_x(const Fq& x) {
    Fq xx = x.square();
    Fq num = Fq::one() - curve::mul_by_a(xx);
    if (!num.is_square()) return std::nullopt;
    Fq den = Fq::one() - curve::edwards_d() * xx;
    if (den.is_zero()) return std::nullopt;
    auto y = (num * den.inverse()).sqrt();
    if (!y) return std::nullopt;
    Fq yy = y->is_lexicographically_largest() ? *y : -*y;
    return from_affine(x, yy);
  }

  /// Deterministic try-and-increment hash to the group: the first counter
  /// whose digest decodes as an x coordinate wins.
  static GroupElement hash_to_group(std::string_view domain, std::uint64_t index) {
    for (std::uint64_t attempt = 0;; ++attempt) {
      Digest h = Sha256().update(domain).update_u64(index).update_u64(attempt).finalize();
      auto p = from_x(Fq::from_bytes_reduce(h));
      if (p && !p->is_identity()) return *p;
    }
  }

  /// Signed base-2^w digits in (-2^(w-1), 2^(w-1)]; enough digits for 256 bits.
  static std::vector<int> signed_digits(const Limbs& k, unsigned w) {
    const unsigned n = (256 + w - 1) / w + 1;
    std::vector<int> out(n, 0);
    const int radix = 1 << w;
    const int half = radix / 2;
    int carry = 0;
    for (unsigned i = 0; i < n; ++i) {
      unsigned bit = i * w;
      int v = carry;
      for (unsigned j = 0; j < w && bit + j < 256; ++j) v += int(detail::limbs_bit(k, bit + j)) << j;
      if (v > half) {
        out[i] = v - radix;
        carry = 1;
      } else {
        out[i] = v;
        carry = 0;
      }
    }
    return out;
  }

 private:
  static GroupElement from_extended(const Fq& x, const Fq& y, const Fq& t, const Fq& z) {
    GroupElement p;
    p.x_ = x;
    p.y_ = y;
    p.t_ = t;
    p.z_ = z;
    return p;
  }

  Fq x_;
  Fq y_;
  Fq t_;
  Fq z_;
};

}  // namespace witbench

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
#include <cstring>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace witbench {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using Limbs = std::array<u64, 4>;

namespace detail {

inline u64 add_carry(u64 a, u64 b, u64& carry) {
  u128 t = u128(a) + b + carry;
  carry = u64(t >> 64);
  return u64(t);
}

inline u64 sub_borrow(u64 a, u64 b, u64& borrow) {
  u128 t = u128(a) - b - borrow;
  borrow = u64(t >> 127);
  return u64(t);
}

// a >= b, little-endian limbs.
inline bool geq(const Limbs& a, const Limbs& b) {
  for (int i = 3; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return true;
}

inline Limbs sub_limbs(const Limbs& a, const Limbs& b) {
  Limbs r;
  u64 borrow = 0;
  for (int i = 0; i < 4; ++i) r[i] = sub_borrow(a[i], b[i], borrow);
  return r;
}

inline bool limbs_bit(const Limbs& a, unsigned i) { return (a[i / 64] >> (i % 64)) & 1; }

inline unsigned limbs_bits(const Limbs& a) {
  for (int i = 3; i >= 0; --i) {
    if (a[i] != 0) return unsigned(64 * i + 64 - __builtin_clzll(a[i]));
  }
  return 0;
}

}  // namespace detail

/// Element of a prime field with a modulus below 2^255, kept in Montgomery
/// form (value * 2^256 mod p). All public constructors and accessors speak
/// canonical integers; the Montgomery representation never leaks.
///
/// `Params` supplies `modulus`, `r2` (2^512 mod p), `inv` (-p^-1 mod 2^64),
/// `two_adicity`, `trace_minus_one_div_two` ((t-1)/2 for p-1 = 2^s * t, t odd)
/// and `root_of_unity` (a primitive 2^two_adicity-th root, canonical limbs).
template <class Params>
class PrimeField {
 public:
  static constexpr std::size_t kBytes = 32;

  constexpr PrimeField() = default;

  static PrimeField zero() { return PrimeField(); }
  static PrimeField one() {
    static const PrimeField v = from_u64(1);
    return v;
  }

  static PrimeField from_u64(u64 v) { return from_canonical_limbs({v, 0, 0, 0}); }
  static PrimeField from_i64(std::int64_t v) {
    return v >= 0 ? from_u64(u64(v)) : -from_u64(u64(-(v + 1)) + 1);
  }

  /// Requires limbs < modulus.
  static PrimeField from_canonical_limbs(const Limbs& l) {
    PrimeField f;
    f.m_ = l;
    return f * raw_r2();
  }

  /// Reduces any 256-bit integer modulo p.
  static PrimeField from_limbs_reduce(const Limbs& l) {
    // mont(x, R^2) = x * R mod p for any x < 2^256 because R^2 < p.
    PrimeField f;
    f.m_ = l;
    return f * raw_r2();
  }

  /// 32-byte little-endian canonical encoding; nullopt when value >= p.
  static std::optional<PrimeField> from_bytes(std::span<const std::uint8_t> b) {
    if (b.size() != kBytes) return std::nullopt;
    Limbs l = load_le(b);
    if (detail::geq(l, Params::modulus)) return std::nullopt;
    return from_canonical_limbs(l);
  }

  /// Interprets 32 little-endian bytes as an integer and reduces it mod p.
  static PrimeField from_bytes_reduce(std::span<const std::uint8_t> b) {
    if (b.size() != kBytes) throw std::invalid_argument("from_bytes_reduce expects 32 bytes");
    return from_limbs_reduce(load_le(b));
  }

  /// Reduces a 512-bit little-endian integer: lo + hi * 2^256 (mod p).
  static PrimeField from_wide_bytes(std::span<const std::uint8_t> b) {
    if (b.size() != 2 * kBytes) throw std::invalid_argument("from_wide_bytes expects 64 bytes");
    static const PrimeField two_256 = [] {
      PrimeField t = from_u64(1ULL << 32);
      t = t * t;  // 2^64
      t = t * t;  // 2^128
      return t * t;
    }();
    return from_bytes_reduce(b.first(32)) + from_bytes_reduce(b.subspan(32)) * two_256;
  }

  /// Parses "0x"-prefixed or bare big-endian hex; throws on malformed input
  /// or values >= p.
  static PrimeField from_hex(std::string_view hex) {
    if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
    if (hex.empty() || hex.size() > 64) throw std::invalid_argument("from_hex: bad length");
    Limbs l{};
    unsigned bit = 0;
    for (std::size_t i = hex.size(); i-- > 0; bit += 4) {
      char c = hex[i];
      u64 v;
      if (c >= '0' && c <= '9') v = u64(c - '0');
      else if (c >= 'a' && c <= 'f') v = u64(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F') v = u64(c - 'A' + 10);
      else throw std::invalid_argument("from_hex: bad digit");
      l[bit / 64] |= v << (bit % 64);
    }
    if (detail::geq(l, Params::modulus)) throw std::invalid_argument("from_hex: value not reduced");
    return from_canonical_limbs(l);
  }

  Limbs to_limbs() const {
    PrimeField one_raw;
    one_raw.m_ = {1, 0, 0, 0};
    return (*this * one_raw).m_;
  }

  std::array<std::uint8_t, kBytes> to_bytes() const {
    std::array<std::uint8_t, kBytes> out{};
    Limbs l = to_limbs();
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 8; ++j) out[8 * i + j] = std::uint8_t(l[i] >> (8 * j));
    }
    return out;
  }

  void write_bytes(std::uint8_t* out) const {
    auto b = to_bytes();
    std::memcpy(out, b.data(), kBytes);
  }

  std::string to_hex() const {
    static const char* digits = "0123456789abcdef";
    Limbs l = to_limbs();
    std::string s = "0x";
    for (int i = 3; i >= 0; --i) {
      for (int j = 15; j >= 0; --j) s.push_back(digits[(l[i] >> (4 * j)) & 0xf]);
    }
    return s;
  }

  bool is_zero() const { return m_[0] == 0 && m_[1] == 0 && m_[2] == 0 && m_[3] == 0; }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.m_ == b.m_; }

  friend PrimeField operator+(const PrimeField& a, const PrimeField& b) {
    PrimeField r;
    u64 carry = 0;
    for (int i = 0; i < 4; ++i) r.m_[i] = detail::add_carry(a.m_[i], b.m_[i], carry);
    // modulus < 2^255 so the sum never overflows 256 bits.
    if (detail::geq(r.m_, Params::modulus)) r.m_ = detail::sub_limbs(r.m_, Params::modulus);
    return r;
  }

  friend PrimeField operator-(const PrimeField& a, const PrimeField& b) {
    PrimeField r;
    u64 borrow = 0;
    for (int i = 0; i < 4; ++i) r.m_[i] = detail::sub_borrow(a.m_[i], b.m_[i], borrow);
    if (borrow) {
      u64 carry = 0;
      for (int i = 0; i < 4; ++i) r.m_[i] = detail::add_carry(r.m_[i], Params::modulus[i], carry);
    }
    return r;
  }

  PrimeField operator-() const { return zero() - *this; }

  static_assert(Params::modulus[3] < 0x7fffffffffffffffULL, "no-carry multiplication needs a spare top bit");

  // CIOS Montgomery multiplication without the final carry word: valid
  // because the top limb of every modulus used here is below 2^63 - 1.
  friend PrimeField operator*(const PrimeField& a, const PrimeField& b) {
    const Limbs& p = Params::modulus;
    const Limbs& x = a.m_;
    u64 t0 = 0, t1 = 0, t2 = 0, t3 = 0;
    for (int i = 0; i < 4; ++i) {
      const u64 y = b.m_[i];
      u128 s = u128(x[0]) * y + t0;
      u64 hi = u64(s >> 64);
      t0 = u64(s);
      const u64 m = t0 * Params::inv;
      u128 c = u128(m) * p[0] + t0;
      u64 ch = u64(c >> 64);
      s = u128(x[1]) * y + t1 + hi;
      hi = u64(s >> 64);
      c = u128(m) * p[1] + u64(s) + ch;
      ch = u64(c >> 64);
      t0 = u64(c);
      s = u128(x[2]) * y + t2 + hi;
      hi = u64(s >> 64);
      c = u128(m) * p[2] + u64(s) + ch;
      ch = u64(c >> 64);
      t1 = u64(c);
      s = u128(x[3]) * y + t3 + hi;
      hi = u64(s >> 64);
      c = u128(m) * p[3] + u64(s) + ch;
      ch = u64(c >> 64);
      t2 = u64(c);
      t3 = ch + hi;
    }
    PrimeField r;
    r.m_ = {t0, t1, t2, t3};
    if (detail::geq(r.m_, p)) r.m_ = detail::sub_limbs(r.m_, p);
    return r;
  }

  PrimeField& operator+=(const PrimeField& o) { return *this = *this + o; }
  PrimeField& operator-=(const PrimeField& o) { return *this = *this - o; }
  PrimeField& operator*=(const PrimeField& o) { return *this = *this * o; }

  PrimeField square() const { return *this * *this; }
  PrimeField dbl() const { return *this + *this; }

  PrimeField pow(const Limbs& e) const {
    PrimeField result = one();
    for (int i = int(detail::limbs_bits(e)) - 1; i >= 0; --i) {
      result = result.square();
      if (detail::limbs_bit(e, unsigned(i))) result *= *this;
    }
    return result;
  }

  PrimeField pow(u64 e) const { return pow(Limbs{e, 0, 0, 0}); }

  /// Throws std::domain_error on zero.
  PrimeField inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero field element");
    Limbs e = Params::modulus;
    e[0] -= 2;  // p is odd and > 2, no borrow
    return pow(e);
  }

  /// Euler criterion; zero counts as a square.
  bool is_square() const {
    if (is_zero()) return true;
    Limbs e = detail::sub_limbs(Params::modulus, {1, 0, 0, 0});
    e = shr1(e);
    return pow(e) == one();
  }

  /// Tonelli-Shanks. nullopt for non-residues.
  std::optional<PrimeField> sqrt() const {
    if (is_zero()) return zero();
    PrimeField w = pow(Params::trace_minus_one_div_two);
    PrimeField x = *this * w;    // a^((t+1)/2)
    PrimeField b = x * w;        // a^t
    PrimeField z = from_canonical_limbs(Params::root_of_unity);
    unsigned v = Params::two_adicity;
    while (!(b == one())) {
      unsigned k = 0;
      PrimeField b2k = b;
      while (!(b2k == one())) {
        b2k = b2k.square();
        ++k;
        if (k == v) return std::nullopt;
      }
      PrimeField w2 = z;
      for (unsigned j = 0; j + k + 1 < v; ++j) w2 = w2.square();
      z = w2.square();
      b *= z;
      x *= w2;
      v = k;
    }
    return x;
  }

  /// Canonical integer comparison against (p-1)/2.
  bool is_lexicographically_largest() const {
    static const Limbs half = shr1(Params::modulus);
    Limbs l = to_limbs();
    return !detail::geq(half, l);
  }

  static const Limbs& modulus() { return Params::modulus; }

 private:
  static PrimeField raw_r2() {
    PrimeField f;
    f.m_ = Params::r2;
    return f;
  }

  static Limbs shr1(Limbs l) {
    for (int i = 0; i < 4; ++i) l[i] = (l[i] >> 1) | (i < 3 ? l[i + 1] << 63 : 0);
    return l;
  }

  static Limbs load_le(std::span<const std::uint8_t> b) {
    Limbs l{};
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 8; ++j) l[i] |= u64(b[8 * i + j]) << (8 * j);
    }
    return l;
  }

  Limbs m_{0, 0, 0, 0};
};

struct FqParams {
  static constexpr Limbs modulus = {0xffffffff00000001ULL, 0x53bda402fffe5bfeULL,
                                    0x3339d80809a1d805ULL, 0x73eda753299d7d48ULL};
  static constexpr Limbs r2 = {0xc999e990f3f29c6dULL, 0x2b6cedcb87925c23ULL,
                               0x05d314967254398fULL, 0x0748d9d99f59ff11ULL};
  static constexpr u64 inv = 0xfffffffeffffffffULL;
  static constexpr unsigned two_adicity = 32;
  static constexpr Limbs trace_minus_one_div_two = {0x7fff2dff7fffffffULL, 0x04d0ec02a9ded201ULL,
                                                    0x94cebea4199cec04ULL, 0x0000000039f6d3a9ULL};
  static constexpr Limbs root_of_unity = {0x1b788f500b912f1fULL, 0xc4024ff270b3e094ULL,
                                          0x0fd56dc8d168d6c0ULL, 0x0212d79e5b416b6fULL};
};

struct FrParams {
  static constexpr Limbs modulus = {0x74fd06b52876e7e1ULL, 0xff8f870074190471ULL,
                                    0x0cce760202687600ULL, 0x1cfb69d4ca675f52ULL};
  static constexpr Limbs r2 = {0xdbb4f5d658db47cbULL, 0x40fa7ca27fecb938ULL,
                               0xaa9e6daec0055ceaULL, 0x0ae793ddb14aec7dULL};
  static constexpr u64 inv = 0xf19f22295cc063dfULL;
  static constexpr unsigned two_adicity = 5;
  static constexpr Limbs trace_minus_one_div_two = {0xc5d3f41ad4a1db9fULL, 0x03fe3e1c01d06411ULL,
                                                    0x483339d80809a1d8ULL, 0x0073eda753299d7dULL};
  static constexpr Limbs root_of_unity = {0xc65a62a1234bd960ULL, 0x34bb3e0cb7ed22aeULL,
                                          0x36b6675f52c70082ULL, 0x19470b7efe802f9bULL};
};

/// Base field of the curve.
using Fq = PrimeField<FqParams>;
/// Scalar field: commitments, hashing and circuits all live here.
using Fr = PrimeField<FrParams>;
using FieldElement = Fr;

/// Montgomery batch inversion. Zero entries are left as zero.
template <class F>
void batch_invert(std::span<F> values) {
  std::vector<F> prefix(values.size());
  F acc = F::one();
  for (std::size_t i = 0; i < values.size(); ++i) {
    prefix[i] = acc;
    if (!values[i].is_zero()) acc *= values[i];
  }
  F inv = acc.inverse();
  for (std::size_t i = values.size(); i-- > 0;) {
    if (values[i].is_zero()) continue;
    F v = values[i];
    values[i] = inv * prefix[i];
    inv *= v;
  }
}

}  // namespace witbench

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
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "witbench/algebra/field.hpp"
#include "witbench/algebra/hash.hpp"
#include "witbench/bytes.hpp"

namespace witbench {

/// Sparse sum of coeff * w[var], terms sorted by variable with no zero
/// coefficients. Variable 0 is the constant one.
class LinearCombination {
 public:
  using Term = std::pair<std::uint32_t, Fr>;

  LinearCombination() = default;

  static LinearCombination variable(std::uint32_t v, const Fr& coeff = Fr::one()) {
    LinearCombination lc;
    if (!coeff.is_zero()) lc.terms_.emplace_back(v, coeff);
    return lc;
  }
  static LinearCombination constant(const Fr& c) { return variable(0, c); }

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  Fr evaluate(std::span<const Fr> w) const {
    Fr acc;
    for (const auto& [v, c] : terms_) acc += c * w[v];
    return acc;
  }

  friend LinearCombination operator+(const LinearCombination& a, const LinearCombination& b) {
    return combine(a, Fr::one(), b, Fr::one());
  }
  friend LinearCombination operator-(const LinearCombination& a, const LinearCombination& b) {
    return combine(a, Fr::one(), b, -Fr::one());
  }
  friend LinearCombination operator*(const Fr& k, const LinearCombination& a) {
    if (k.is_zero()) return {};
    LinearCombination out = a;
    for (auto& t : out.terms_) t.second = t.second * k;
    return out;
  }
  LinearCombination& operator+=(const LinearCombination& b) { return *this = *this + b; }

  friend bool operator==(const LinearCombination& a, const LinearCombination& b) { return a.terms_ == b.terms_; }

  /// ka * a + kb * b with like terms merged.
  static LinearCombination combine(const LinearCombination& a, const Fr& ka, const LinearCombination& b,
                                   const Fr& kb) {
    LinearCombination out;
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin(), j = b.terms_.begin();
    auto push = [&](std::uint32_t v, const Fr& c) {
      if (!c.is_zero()) out.terms_.emplace_back(v, c);
    };
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
        push(i->first, ka * i->second);
        ++i;
      } else if (i == a.terms_.end() || j->first < i->first) {
        push(j->first, kb * j->second);
        ++j;
      } else {
        push(i->first, ka * i->second + kb * j->second);
        ++i;
        ++j;
      }
    }
    return out;
  }

 private:
  std::vector<Term> terms_;
};

using LC = LinearCombination;

/// (a . w) * (b . w) = (c . w)
struct Constraint {
  LC a, b, c;
};

using Assignment = std::vector<Fr>;

/// Rank-1 constraint system. Variable 0 is the constant one, variables
/// 1..num_public() are public inputs, the rest are private.
class ConstraintSystem {
 public:
  static constexpr std::uint32_t kOne = 0;

  std::uint32_t num_variables() const { return num_vars_; }
  std::uint32_t num_public() const { return num_public_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  std::size_t size() const { return constraints_.size(); }

  bool is_public(std::uint32_t v) const { return v >= 1 && v <= num_public_; }
  bool is_private(std::uint32_t v) const { return v > num_public_; }

  /// Public inputs must all be allocated before the first private variable.
  std::uint32_t alloc_public() {
    if (num_vars_ != num_public_ + 1) throw std::logic_error("public inputs must precede private variables");
    ++num_public_;
    return num_vars_++;
  }
  std::uint32_t alloc_private() { return num_vars_++; }

  void enforce(LC a, LC b, LC c) {
    for (const LC* lc : {&a, &b, &c}) {
      if (!lc->empty() && lc->terms().back().first >= num_vars_) {
        throw std::out_of_range("constraint references an unallocated variable");
      }
    }
    constraints_.push_back({std::move(a), std::move(b), std::move(c)});
  }

  /// u32 variables || u32 public || u32 constraints, then for each of a, b,
  /// c of every constraint: u32 term count and (u32 var, 32-byte coeff)
  /// pairs. All integers little-endian.
  Bytes serialize() const {
    Bytes out;
    ByteWriter w(out);
    w.u32(num_vars_);
    w.u32(num_public_);
    w.u32(std::uint32_t(constraints_.size()));
    for (const auto& con : constraints_) {
      for (const LC* lc : {&con.a, &con.b, &con.c}) {
        w.u32(std::uint32_t(lc->terms().size()));
        for (const auto& [v, k] : lc->terms()) {
          w.u32(v);
          w.field(k);
        }
      }
    }
    return out;
  }

  Digest digest() const { return Sha256().update(serialize()).finalize(); }

 private:
  std::uint32_t num_vars_ = 1;
  std::uint32_t num_public_ = 0;
  std::vector<Constraint> constraints_;
};

/// Checks every constraint exactly, and that w[0] = 1. Throws
/// std::invalid_argument when the length differs from the variable count.
inline bool is_satisfied(const ConstraintSystem& cs, std::span<const Fr> w) {
  if (w.size() != cs.num_variables()) throw std::invalid_argument("assignment length mismatch");
  if (w[0] != Fr::one()) return false;
  for (const auto& con : cs.constraints()) {
    if (con.a.evaluate(w) * con.b.evaluate(w) != con.c.evaluate(w)) return false;
  }
  return true;
}

/// Fills unknown variables by walking the constraints in order: each
/// constraint whose a and b are fully known and whose c has exactly one
/// unknown variable defines that variable. Throws std::logic_error if some
/// variable stays unknown.
inline void solve(const ConstraintSystem& cs, Assignment& w, std::vector<bool>& known) {
  for (const auto& con : cs.constraints()) {
    auto all_known = [&](const LC& lc) {
      return std::all_of(lc.terms().begin(), lc.terms().end(), [&](const auto& t) { return bool(known[t.first]); });
    };
    if (!all_known(con.a) || !all_known(con.b)) continue;
    const LC::Term* unknown = nullptr;
    Fr rest;
    bool solvable = true;
    for (const auto& t : con.c.terms()) {
      if (known[t.first]) {
        rest += t.second * w[t.first];
      } else if (unknown) {
        solvable = false;
      } else {
        unknown = &t;
      }
    }
    if (!unknown || !solvable) continue;
    w[unknown->first] = (con.a.evaluate(w) * con.b.evaluate(w) - rest) * unknown->second.inverse();
    known[unknown->first] = true;
  }
  if (std::find(known.begin(), known.end(), false) != known.end()) {
    throw std::logic_error("constraint system is not solvable in order");
  }
}

}  // namespace witbench

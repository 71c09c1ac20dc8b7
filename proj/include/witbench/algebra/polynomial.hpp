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

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "witbench/algebra/field.hpp"

namespace witbench {

/// Evaluation domain D = {0, 1, ..., n-1} in Fr with precomputed barycentric
/// weights w_i = 1 / prod_{j != i} (i - j).
///
/// Fr has 2-adicity 5, so no multiplicative subgroup of order 256 exists and
/// the integer domain is used for every size.
class EvaluationDomain {
 public:
  explicit EvaluationDomain(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("EvaluationDomain: size must be positive");
    points_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) points_.push_back(Fr::from_u64(i));

    // inv_small_[k] = 1/k for k in [1, n-1].
    inv_small_.assign(n, Fr::zero());
    for (std::size_t k = 1; k < n; ++k) inv_small_[k] = Fr::from_u64(k);
    batch_invert<Fr>(inv_small_);

    weights_.assign(n, Fr::one());
    for (std::size_t i = 0; i < n; ++i) {
      Fr prod = Fr::one();
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) prod *= Fr::from_i64(std::int64_t(i) - std::int64_t(j));
      }
      weights_[i] = prod;
    }
    batch_invert<Fr>(weights_);
  }

  static const EvaluationDomain& verkle() {
    static const EvaluationDomain d(256);
    return d;
  }

  std::size_t size() const { return n_; }
  const Fr& point(std::size_t i) const { return points_[i]; }
  const Fr& weight(std::size_t i) const { return weights_[i]; }

  /// 1/(x_i - x_j) for i != j.
  Fr inv_diff(std::size_t i, std::size_t j) const {
    return i > j ? inv_small_[i - j] : -inv_small_[j - i];
  }

  /// Index of z when z lies in the domain.
  std::optional<std::size_t> index_of(const Fr& z) const {
    Limbs l = z.to_limbs();
    if (l[1] == 0 && l[2] == 0 && l[3] == 0 && l[0] < n_) return std::size_t(l[0]);
    return std::nullopt;
  }

  /// A(z) = prod_i (z - x_i).
  Fr vanishing(const Fr& z) const {
    Fr acc = Fr::one();
    for (const auto& x : points_) acc *= z - x;
    return acc;
  }

  /// Lagrange basis values L_i(z); a unit vector when z is in the domain.
  std::vector<Fr> lagrange_coefficients(const Fr& z) const {
    std::vector<Fr> out(n_, Fr::zero());
    if (auto idx = index_of(z)) {
      out[*idx] = Fr::one();
      return out;
    }
    for (std::size_t i = 0; i < n_; ++i) out[i] = z - points_[i];
    batch_invert<Fr>(out);
    Fr a = vanishing(z);
    for (std::size_t i = 0; i < n_; ++i) out[i] = a * weights_[i] * out[i];
    return out;
  }

 private:
  std::size_t n_;
  std::vector<Fr> points_;
  std::vector<Fr> weights_;
  std::vector<Fr> inv_small_;
};

/// A polynomial of degree < |D| held by its evaluations over D.
class Polynomial {
 public:
  Polynomial() = default;

  Polynomial(const EvaluationDomain& domain, std::vector<Fr> evaluations)
      : domain_(&domain), evals_(std::move(evaluations)) {
    if (evals_.size() != domain.size()) {
      throw std::invalid_argument("Polynomial: evaluation count must equal domain size");
    }
  }

  static Polynomial zero(const EvaluationDomain& domain) {
    return Polynomial(domain, std::vector<Fr>(domain.size(), Fr::zero()));
  }

  /// Evaluates coefficient form (low degree first, degree < |D|) over D.
  static Polynomial from_coefficients(const EvaluationDomain& domain, std::span<const Fr> coeffs) {
    if (coeffs.size() > domain.size()) throw std::invalid_argument("from_coefficients: degree too large");
    std::vector<Fr> ev(domain.size());
    for (std::size_t i = 0; i < domain.size(); ++i) {
      Fr acc = Fr::zero();
      for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * domain.point(i) + coeffs[k];
      ev[i] = acc;
    }
    return Polynomial(domain, std::move(ev));
  }

  /// Interpolates coefficient form: sum_i f_i w_i prod_{j != i} (X - x_j).
  std::vector<Fr> to_coefficients() const {
    const std::size_t n = evals_.size();
    // Full vanishing polynomial A(X) coefficients.
    std::vector<Fr> a(n + 1, Fr::zero());
    a[0] = Fr::one();
    for (std::size_t j = 0; j < n; ++j) {
      Fr xj = domain_->point(j);
      for (std::size_t k = j + 2; k-- > 0;) {
        Fr lower = k > 0 ? a[k - 1] : Fr::zero();
        a[k] = lower - xj * a[k];
      }
    }
    std::vector<Fr> out(n, Fr::zero());
    std::vector<Fr> q(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (evals_[i].is_zero()) continue;
      // q = A(X) / (X - x_i) by synthetic division.
      Fr xi = domain_->point(i);
      Fr carry = Fr::zero();
      for (std::size_t k = n; k-- > 0;) {
        carry = a[k + 1] + carry * xi;
        q[k] = carry;
      }
      Fr scale = evals_[i] * domain_->weight(i);
      for (std::size_t k = 0; k < n; ++k) out[k] += scale * q[k];
    }
    return out;
  }

  const EvaluationDomain& domain() const { return *domain_; }
  std::span<const Fr> evaluations() const { return evals_; }
  std::vector<Fr>& mutable_evaluations() { return evals_; }
  const Fr& operator[](std::size_t i) const { return evals_[i]; }
  std::size_t size() const { return evals_.size(); }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.evals_ == b.evals_; }

 private:
  const EvaluationDomain* domain_ = nullptr;
  std::vector<Fr> evals_;
};

/// f(z) via the barycentric formula; exact lookup for z in D.
inline Fr lagrange_eval(const Polynomial& poly, const Fr& z) {
  const auto& d = poly.domain();
  if (auto idx = d.index_of(z)) return poly[*idx];
  std::vector<Fr> denom(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) denom[i] = z - d.point(i);
  batch_invert<Fr>(denom);
  Fr acc = Fr::zero();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!poly[i].is_zero()) acc += poly[i] * d.weight(i) * denom[i];
  }
  return acc * d.vanishing(z);
}

/// Evaluations of (f(X) - y) / (X - x_m) over D for a point x_m of D:
///   q_j = (f_j - y) / (x_j - x_m)            for j != m
///   q_m = -(1/w_m) * sum_{j != m} w_j q_j     (derivative at x_m)
/// When y != f(x_m) the result is the formula's value, not a quotient.
inline std::vector<Fr> quotient_in_domain(std::span<const Fr> evals, const Fr& y, std::size_t m,
                                          const EvaluationDomain& d) {
  if (evals.size() != d.size() || m >= d.size()) throw std::invalid_argument("quotient_in_domain: bad input");
  std::vector<Fr> q(d.size(), Fr::zero());
  Fr acc = Fr::zero();
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (j == m) continue;
    q[j] = (evals[j] - y) * d.inv_diff(j, m);
    acc += d.weight(j) * q[j];
  }
  q[m] = -(acc * d.weight(m).inverse());
  return q;
}

}  // namespace witbench

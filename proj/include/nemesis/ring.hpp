// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "nemesis/modular.hpp"

namespace nemesis {

enum class Domain { kCoefficient, kEvaluation };

/// Tables for exact arithmetic in Z_q[X]/(X^N + 1): a primitive 2N-th root
/// of unity psi and its powers in bit-reversed order, with Shoup companions.
class RingContext {
 public:
  /// Requires N a power of two >= 2 and q prime with q = 1 mod 2N.
  RingContext(std::size_t degree, u64 modulus);

  std::size_t degree() const { return degree_; }
  u64 modulus() const { return modulus_; }
  int log_degree() const { return log_degree_; }
  u64 psi() const { return psi_; }
  const BarrettReducer& reducer() const { return reducer_; }

  void forward_in_place(std::span<u64> a) const;
  void inverse_in_place(std::span<u64> a) const;

  bool same_ring(const RingContext& other) const {
    return degree_ == other.degree_ && modulus_ == other.modulus_;
  }

 private:
  std::size_t degree_;
  u64 modulus_;
  int log_degree_;
  u64 psi_;
  BarrettReducer reducer_;
  std::vector<u64> roots_;        // psi^bitrev(i)
  std::vector<u64> roots_shoup_;
  std::vector<u64> inv_roots_;    // psi^-bitrev(i)
  std::vector<u64> inv_roots_shoup_;
  u64 degree_inv_;
  u64 degree_inv_shoup_;
};

using RingPtr = std::shared_ptr<const RingContext>;

RingPtr make_ring(std::size_t degree, u64 modulus);

/// Element of Z_q[X]/(X^N + 1), stored as N residues in [0, q). In the
/// evaluation domain entry i is the value at psi^(2 * bitrev(i) + 1).
class RingElement {
 public:
  RingElement() = default;
  /// Zero element.
  explicit RingElement(RingPtr ring, Domain domain = Domain::kCoefficient);
  /// Takes ownership of residues; throws ParameterError on bad length or range.
  RingElement(RingPtr ring, std::vector<u64> values, Domain domain);

  /// Signed integer coefficients, reduced into [0, q).
  static RingElement from_signed(RingPtr ring, std::span<const std::int64_t> values);

  const RingContext& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  Domain domain() const { return domain_; }
  std::size_t size() const { return values_.size(); }
  std::span<const u64> values() const { return values_; }
  u64 operator[](std::size_t i) const { return values_[i]; }
  bool empty() const { return values_.empty(); }
  bool is_zero() const;

  bool operator==(const RingElement& other) const;

 private:
  friend RingElement ntt_forward(const RingElement&);
  friend RingElement ntt_inverse(const RingElement&);
  friend RingElement ring_add(const RingElement&, const RingElement&);
  friend RingElement ring_sub(const RingElement&, const RingElement&);
  friend RingElement ring_neg(const RingElement&);
  friend RingElement ring_scalar_mul(const RingElement&, u64);
  friend RingElement ring_mul(const RingElement&, const RingElement&);

  RingPtr ring_;
  std::vector<u64> values_;
  Domain domain_ = Domain::kCoefficient;
};

/// Throws DomainError unless x is in the coefficient domain.
RingElement ntt_forward(const RingElement& x);
/// Throws DomainError unless x is in the evaluation domain.
RingElement ntt_inverse(const RingElement& x);

/// Returns x itself when already in the requested domain, else transforms.
RingElement to_evaluation(const RingElement& x);
RingElement to_coefficient(const RingElement& x);

// Coefficient-wise; operands must share ring and domain.
RingElement ring_add(const RingElement& a, const RingElement& b);
RingElement ring_sub(const RingElement& a, const RingElement& b);
RingElement ring_neg(const RingElement& a);
RingElement ring_scalar_mul(const RingElement& a, u64 k);

/// Negacyclic product. Operands in the coefficient domain are transformed
/// first (and counted); the result is in the domain of `a`.
RingElement ring_mul(const RingElement& a, const RingElement& b);

/// X^k as a coefficient-domain element, k in [0, N).
RingElement monomial(RingPtr ring, std::size_t k);

}  // namespace nemesis

// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#include "nemesis/ring.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "nemesis/counters.hpp"
#include "nemesis/errors.hpp"
#include "nemesis/params.hpp"

namespace nemesis {
namespace {

std::size_t bit_reverse(std::size_t x, int bits) {
  std::size_t r = 0;
  for (int i = 0; i < bits; ++i) {
    r = (r << 1) | (x & 1);
    x >>= 1;
  }
  return r;
}

// Smallest primitive 2N-th root of unity mod q among g^((q-1)/2N).
u64 find_primitive_root(std::size_t two_n, u64 q) {
  const u64 cofactor = (q - 1) / two_n;
  for (u64 g = 2; g < q; ++g) {
    const u64 candidate = pow_mod(g, cofactor, q);
    // order divides 2N (a power of two); it is exactly 2N iff candidate^N = -1
    if (pow_mod(candidate, two_n / 2, q) == q - 1) return candidate;
  }
  throw ParameterError("no primitive 2N-th root of unity");
}

void require_compatible(const RingElement& a, const RingElement& b, const char* op) {
  if (a.empty() || b.empty()) throw ParameterError(std::string(op) + ": empty operand");
  if (!a.ring().same_ring(b.ring())) {
    throw ParameterError(std::string(op) + ": operands belong to different rings");
  }
}

void require_same_domain(const RingElement& a, const RingElement& b, const char* op) {
  if (a.domain() != b.domain()) throw DomainError(std::string(op) + ": domain mismatch");
}

}  // namespace

RingContext::RingContext(std::size_t degree, u64 modulus)
    : degree_(degree), modulus_(modulus), log_degree_(std::countr_zero(degree)) {
  if (!is_power_of_two(degree) || degree < 2) throw ParameterError("ring degree must be a power of two");
  if (modulus >= (u64{1} << 62) || !is_prime(modulus)) throw ParameterError("modulus must be a prime below 2^62");
  if (modulus % (2 * degree) != 1) throw ParameterError("modulus must be 1 mod 2N");

  reducer_ = BarrettReducer(modulus);
  psi_ = find_primitive_root(2 * degree, modulus);
  const u64 psi_inv = inv_mod(psi_, modulus);

  roots_.resize(degree);
  inv_roots_.resize(degree);
  roots_shoup_.resize(degree);
  inv_roots_shoup_.resize(degree);
  u64 power = 1;
  u64 inv_power = 1;
  for (std::size_t i = 0; i < degree; ++i) {
    const std::size_t r = bit_reverse(i, log_degree_);
    roots_[r] = power;
    inv_roots_[r] = inv_power;
    power = mul_mod(power, psi_, modulus);
    inv_power = mul_mod(inv_power, psi_inv, modulus);
  }
  for (std::size_t i = 0; i < degree; ++i) {
    roots_shoup_[i] = shoup_precompute(roots_[i], modulus);
    inv_roots_shoup_[i] = shoup_precompute(inv_roots_[i], modulus);
  }
  degree_inv_ = inv_mod(degree % modulus, modulus);
  degree_inv_shoup_ = shoup_precompute(degree_inv_, modulus);
}

// Cooley-Tukey, natural order in, bit-reversed order out. Butterflies keep
// values in [0, 4q) and the last pass reduces to [0, q); needs q < 2^62.
void RingContext::forward_in_place(std::span<u64> a) const {
  const u64 q = modulus_;
  const u64 two_q = 2 * q;
  std::size_t t = degree_;
  for (std::size_t m = 1; m < degree_; m <<= 1) {
    t >>= 1;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j1 = 2 * i * t;
      const u64 w = roots_[m + i];
      const u64 w_shoup = roots_shoup_[m + i];
      u64* x = a.data() + j1;
      u64* y = x + t;
      for (std::size_t j = 0; j < t; ++j) {
        u64 u = x[j];
        u -= (u >= two_q) ? two_q : 0;
        const u64 v = mul_shoup_lazy(y[j], w, w_shoup, q);
        x[j] = u + v;
        y[j] = u - v + two_q;
      }
    }
  }
  for (auto& v : a) {
    v -= (v >= two_q) ? two_q : 0;
    v -= (v >= q) ? q : 0;
  }
}

// Gentleman-Sande, bit-reversed order in, natural order out. Values stay in [0, 2q).
void RingContext::inverse_in_place(std::span<u64> a) const {
  const u64 q = modulus_;
  const u64 two_q = 2 * q;
  std::size_t t = 1;
  for (std::size_t m = degree_; m > 1; m >>= 1) {
    const std::size_t h = m >> 1;
    std::size_t j1 = 0;
    for (std::size_t i = 0; i < h; ++i) {
      const u64 w = inv_roots_[h + i];
      const u64 w_shoup = inv_roots_shoup_[h + i];
      u64* x = a.data() + j1;
      u64* y = x + t;
      for (std::size_t j = 0; j < t; ++j) {
        const u64 u = x[j];
        const u64 v = y[j];
        u64 s = u + v;
        s -= (s >= two_q) ? two_q : 0;
        x[j] = s;
        y[j] = mul_shoup_lazy(u - v + two_q, w, w_shoup, q);
      }
      j1 += 2 * t;
    }
    t <<= 1;
  }
  for (auto& v : a) v = mul_shoup(v, degree_inv_, degree_inv_shoup_, q);
}

RingPtr make_ring(std::size_t degree, u64 modulus) {
  return std::make_shared<const RingContext>(degree, modulus);
}

RingElement::RingElement(RingPtr ring, Domain domain)
    : ring_(std::move(ring)), domain_(domain) {
  if (!ring_) throw ParameterError("RingElement: null ring");
  values_.assign(ring_->degree(), 0);
}

RingElement::RingElement(RingPtr ring, std::vector<u64> values, Domain domain)
    : ring_(std::move(ring)), values_(std::move(values)), domain_(domain) {
  if (!ring_) throw ParameterError("RingElement: null ring");
  if (values_.size() != ring_->degree()) {
    throw ParameterError("RingElement: expected " + std::to_string(ring_->degree()) +
                         " residues, got " + std::to_string(values_.size()));
  }
  const u64 q = ring_->modulus();
  if (std::any_of(values_.begin(), values_.end(), [q](u64 v) { return v >= q; })) {
    throw ParameterError("RingElement: residue out of range [0, q)");
  }
}

RingElement RingElement::from_signed(RingPtr ring, std::span<const std::int64_t> values) {
  if (!ring) throw ParameterError("RingElement: null ring");
  if (values.size() != ring->degree()) throw ParameterError("RingElement: wrong coefficient count");
  std::vector<u64> residues(values.size());
  const u64 q = ring->modulus();
  std::transform(values.begin(), values.end(), residues.begin(),
                 [q](std::int64_t v) { return to_residue(v, q); });
  return RingElement(std::move(ring), std::move(residues), Domain::kCoefficient);
}

bool RingElement::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](u64 v) { return v == 0; });
}

bool RingElement::operator==(const RingElement& other) const {
  if (empty() || other.empty()) return empty() && other.empty();
  return ring_->same_ring(*other.ring_) && domain_ == other.domain_ && values_ == other.values_;
}

RingElement ntt_forward(const RingElement& x) {
  if (x.empty()) throw ParameterError("ntt_forward: empty operand");
  if (x.domain() != Domain::kCoefficient) throw DomainError("ntt_forward: expected coefficient domain");
  RingElement out = x;
  out.ring_->forward_in_place(out.values_);
  out.domain_ = Domain::kEvaluation;
  ++instrumentation::thread_counters().ntt_forward;
  return out;
}

RingElement ntt_inverse(const RingElement& x) {
  if (x.empty()) throw ParameterError("ntt_inverse: empty operand");
  if (x.domain() != Domain::kEvaluation) throw DomainError("ntt_inverse: expected evaluation domain");
  RingElement out = x;
  out.ring_->inverse_in_place(out.values_);
  out.domain_ = Domain::kCoefficient;
  ++instrumentation::thread_counters().ntt_inverse;
  return out;
}

RingElement to_evaluation(const RingElement& x) {
  return x.domain() == Domain::kEvaluation ? x : ntt_forward(x);
}

RingElement to_coefficient(const RingElement& x) {
  return x.domain() == Domain::kCoefficient ? x : ntt_inverse(x);
}

RingElement ring_add(const RingElement& a, const RingElement& b) {
  require_compatible(a, b, "ring_add");
  require_same_domain(a, b, "ring_add");
  RingElement out = a;
  const u64 q = a.ring().modulus();
  for (std::size_t i = 0; i < out.values_.size(); ++i) {
    out.values_[i] = add_mod(out.values_[i], b.values_[i], q);
  }
  return out;
}

RingElement ring_sub(const RingElement& a, const RingElement& b) {
  require_compatible(a, b, "ring_sub");
  require_same_domain(a, b, "ring_sub");
  RingElement out = a;
  const u64 q = a.ring().modulus();
  for (std::size_t i = 0; i < out.values_.size(); ++i) {
    out.values_[i] = sub_mod(out.values_[i], b.values_[i], q);
  }
  return out;
}

RingElement ring_neg(const RingElement& a) {
  if (a.empty()) throw ParameterError("ring_neg: empty operand");
  RingElement out = a;
  const u64 q = a.ring().modulus();
  for (auto& v : out.values_) v = neg_mod(v, q);
  return out;
}

RingElement ring_scalar_mul(const RingElement& a, u64 k) {
  if (a.empty()) throw ParameterError("ring_scalar_mul: empty operand");
  const u64 q = a.ring().modulus();
  k %= q;
  const u64 k_shoup = shoup_precompute(k, q);
  RingElement out = a;
  for (auto& v : out.values_) v = mul_shoup(v, k, k_shoup, q);
  return out;
}

RingElement ring_mul(const RingElement& a, const RingElement& b) {
  require_compatible(a, b, "ring_mul");
  RingElement lhs = to_evaluation(a);
  const RingElement rhs = to_evaluation(b);
  const BarrettReducer& reducer = a.ring().reducer();
  for (std::size_t i = 0; i < lhs.values_.size(); ++i) {
    lhs.values_[i] = reducer.mul(lhs.values_[i], rhs.values_[i]);
  }
  ++instrumentation::thread_counters().ring_muls;
  return a.domain() == Domain::kCoefficient ? ntt_inverse(lhs) : lhs;
}

RingElement monomial(RingPtr ring, std::size_t k) {
  if (!ring || k >= ring->degree()) throw ParameterError("monomial: exponent out of range");
  std::vector<u64> values(ring->degree(), 0);
  values[k] = 1;
  return RingElement(std::move(ring), std::move(values), Domain::kCoefficient);
}

}  // namespace nemesis

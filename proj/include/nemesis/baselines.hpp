// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nemesis/cache.hpp"
#include "nemesis/ckks.hpp"

namespace nemesis {

/// One fresh encryption per value, value in slot 0.
void naive_encrypt(const Context& ctx, const PublicKey& pk, std::span<const double> values, Rng& rng,
                   const CiphertextSink& sink);
std::vector<Ciphertext> naive_encrypt(const Context& ctx, const PublicKey& pk, std::span<const double> values,
                                      Rng& rng);

/// One fresh encryption per packed chunk of batch_size values (1 <= batch_size <= N/2).
void batch_encrypt(const Context& ctx, const PublicKey& pk, std::span<const double> values,
                   std::size_t batch_size, Rng& rng, const CiphertextSink& sink);
std::vector<Ciphertext> batch_encrypt(const Context& ctx, const PublicKey& pk, std::span<const double> values,
                                      std::size_t batch_size, Rng& rng);

struct RadixOptions {
  unsigned radix = 2;
  unsigned int_digits = 6;   // powers r^0 .. r^int_digits
  unsigned frac_digits = 16; // powers r^-1 .. r^-frac_digits
  std::size_t pool_size = 16;
};

/// Scalar radix cache: Enc(r^k) for k in [-frac_digits, int_digits] plus a
/// pool of encryptions of zero used as the per-scalar randomizer.
class RadixCache {
 public:
  unsigned radix() const { return options_.radix; }
  unsigned int_digits() const { return options_.int_digits; }
  unsigned frac_digits() const { return options_.frac_digits; }
  std::size_t power_count() const { return powers_.size(); }
  std::size_t pool_size() const { return zero_pool_.size(); }
  std::size_t size() const { return powers_.size() + zero_pool_.size(); }

  /// Enc(r^k), k in [-frac_digits, int_digits].
  const Ciphertext& power(int k) const;
  const Ciphertext& zero(std::size_t i) const { return zero_pool_.at(i); }

  /// Digits of round(|v| * r^frac_digits) in base r, least significant first;
  /// digit i multiplies r^(i - frac_digits). Throws RangeError if not representable.
  std::vector<unsigned> digits(double v) const;

 private:
  friend RadixCache rache_precompute(const Context&, const PublicKey&, const RadixOptions&, Rng&);
  RadixOptions options_;
  std::vector<Ciphertext> powers_;  // index k + frac_digits
  std::vector<Ciphertext> zero_pool_;
};

/// Throws ParameterError if int_digits + frac_digits > 52, the radix is
/// below 2, or the pool is empty; RangeError if r^int_digits exceeds the
/// message budget.
RadixCache rache_precompute(const Context& ctx, const PublicKey& pk, const RadixOptions& options, Rng& rng);

/// Sum of cached powers selected by the digits of |v|, plus one random pool
/// zero, negated for v < 0. Uses digit_sum(v) + 1 ciphertext additions.
Ciphertext rache_encrypt_scalar(const Context& ctx, const RadixCache& cache, double v, Rng& rng);

void rache_encrypt(const Context& ctx, const RadixCache& cache, std::span<const double> values, Rng& rng,
                   const CiphertextSink& sink);

}  // namespace nemesis

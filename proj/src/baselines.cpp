// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#include "nemesis/baselines.hpp"

#include <cmath>
#include <string>

#include "nemesis/errors.hpp"

namespace nemesis {

void naive_encrypt(const Context& ctx, const PublicKey& pk, std::span<const double> values, Rng& rng,
                   const CiphertextSink& sink) {
  SlotVector single(1);
  for (std::size_t i = 0; i < values.size(); ++i) {
    single[0] = values[i];
    sink(i, encrypt(ctx, pk, encode_fast(ctx, single), rng));
  }
}

std::vector<Ciphertext> naive_encrypt(const Context& ctx, const PublicKey& pk, std::span<const double> values,
                                      Rng& rng) {
  std::vector<Ciphertext> out;
  out.reserve(values.size());
  naive_encrypt(ctx, pk, values, rng, [&out](std::size_t, Ciphertext&& ct) { out.push_back(std::move(ct)); });
  return out;
}

void batch_encrypt(const Context& ctx, const PublicKey& pk, std::span<const double> values,
                   std::size_t batch_size, Rng& rng, const CiphertextSink& sink) {
  check_batch_size(batch_size, ctx.slot_count());
  const std::size_t chunks = chunk_count(values.size(), batch_size);
  for (std::size_t c = 0; c < chunks; ++c) {
    sink(c, encrypt(ctx, pk, encode_fast(ctx, chunk_of(values, batch_size, c)), rng));
  }
}

std::vector<Ciphertext> batch_encrypt(const Context& ctx, const PublicKey& pk, std::span<const double> values,
                                      std::size_t batch_size, Rng& rng) {
  std::vector<Ciphertext> out;
  batch_encrypt(ctx, pk, values, batch_size, rng,
                [&out](std::size_t, Ciphertext&& ct) { out.push_back(std::move(ct)); });
  return out;
}

const Ciphertext& RadixCache::power(int k) const {
  const int index = k + static_cast<int>(options_.frac_digits);
  if (index < 0 || static_cast<std::size_t>(index) >= powers_.size()) {
    throw ParameterError("radix power " + std::to_string(k) + " not cached");
  }
  return powers_[static_cast<std::size_t>(index)];
}

std::vector<unsigned> RadixCache::digits(double v) const {
  if (!std::isfinite(v)) throw RangeError("radix encoding of a non-finite value");
  const double r = options_.radix;
  const double scaled = std::round(std::abs(v) * std::pow(r, static_cast<double>(options_.frac_digits)));
  const std::size_t count = options_.int_digits + options_.frac_digits + 1;
  if (scaled >= std::pow(r, static_cast<double>(count))) {
    throw RangeError("value " + std::to_string(v) + " not representable with the cached radix powers");
  }
  auto n = static_cast<std::uint64_t>(scaled);
  std::vector<unsigned> out(count, 0);
  for (std::size_t i = 0; i < count && n > 0; ++i) {
    out[i] = static_cast<unsigned>(n % options_.radix);
    n /= options_.radix;
  }
  return out;
}

RadixCache rache_precompute(const Context& ctx, const PublicKey& pk, const RadixOptions& options, Rng& rng) {
  if (options.radix < 2) throw ParameterError("radix must be at least 2");
  if (options.int_digits + options.frac_digits > 52) {
    throw ParameterError("int_digits + frac_digits must not exceed 52");
  }
  const double r = options.radix;
  if (std::pow(r, options.int_digits + options.frac_digits + 1) > 0x1.0p53) {
    throw ParameterError("radix range exceeds double precision");
  }
  if (options.pool_size == 0) throw ParameterError("zero pool must not be empty");
  if (std::pow(r, options.int_digits) > ctx.params().max_message_magnitude) {
    throw RangeError("largest radix power exceeds the message magnitude budget");
  }

  RadixCache cache;
  cache.options_ = options;
  SlotVector single(1);
  for (int k = -static_cast<int>(options.frac_digits); k <= static_cast<int>(options.int_digits); ++k) {
    single[0] = std::pow(r, k);
    cache.powers_.push_back(encrypt(ctx, pk, encode_fast(ctx, single), rng));
  }
  single[0] = 0.0;
  for (std::size_t i = 0; i < options.pool_size; ++i) {
    cache.zero_pool_.push_back(encrypt(ctx, pk, encode_fast(ctx, single), rng));
  }
  return cache;
}

Ciphertext rache_encrypt_scalar(const Context& ctx, const RadixCache& cache, double v, Rng& rng) {
  const std::vector<unsigned> digits = cache.digits(v);
  Ciphertext acc = zero_ciphertext(ctx);
  const int offset = static_cast<int>(cache.frac_digits());
  for (std::size_t i = 0; i < digits.size(); ++i) {
    for (unsigned rep = 0; rep < digits[i]; ++rep) acc = add_ct_ct(acc, cache.power(static_cast<int>(i) - offset));
  }
  acc = add_ct_ct(acc, cache.zero(rng.next_below(cache.pool_size())));
  return v < 0 ? negate(acc) : acc;
}

void rache_encrypt(const Context& ctx, const RadixCache& cache, std::span<const double> values, Rng& rng,
                   const CiphertextSink& sink) {
  for (std::size_t i = 0; i < values.size(); ++i) sink(i, rache_encrypt_scalar(ctx, cache, values[i], rng));
}

}  // namespace nemesis

// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

// Cached batch encryption: encrypt a base slot vector b once, then produce a
// fresh-looking encryption of any message m by
//   1. reconstruction:  Enc(b) * encode(m / b)   (one plaintext multiplication)
//   2. randomization:   + R(x), R with rounded gaussian coefficients
// No public-key operation is performed after the one-time precomputation.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "nemesis/ckks.hpp"
#include "nemesis/counters.hpp"
#include "nemesis/encoding.hpp"

namespace nemesis {

/// Chooses the base slot values of a cache.
class SelectionPolicy {
 public:
  enum class Kind { kAllOnes, kFixedVector, kFrequencyTopK };

  /// d ones: reconstruction scaling becomes the identity.
  static SelectionPolicy all_ones(std::size_t d);
  static SelectionPolicy fixed(SlotVector values);
  /// The d most frequent nonzero values, by descending count then ascending
  /// value. An empty histogram is built from the candidates. With fewer than
  /// d distinct values the ranking repeats cyclically.
  static SelectionPolicy frequency_top_k(std::size_t d, std::map<double, std::uint64_t> histogram = {});

  Kind kind() const { return kind_; }

  /// Throws CacheError when the result would contain a zero.
  SlotVector select(const SlotVector& candidates) const;

 private:
  Kind kind_ = Kind::kAllOnes;
  std::size_t dimension_ = 0;
  SlotVector values_;
  std::map<double, std::uint64_t> histogram_;
};

/// A base slot vector and its one-time encryption. Immutable once built.
class CacheEntry {
 public:
  /// Rebuilds an entry around an existing base encryption (e.g. loaded from disk).
  static CacheEntry from_parts(const Context& ctx, SlotVector base_slots, Ciphertext base_ciphertext);

  const SlotVector& base_slots() const { return base_slots_; }
  std::size_t dimension() const { return static_cast<std::size_t>(base_slots_.size()); }
  const Plaintext& base_plaintext() const { return base_plaintext_; }
  const Ciphertext& base_ciphertext() const { return base_ciphertext_; }
  /// base_ciphertext in the evaluation domain.
  const Ciphertext& prepared() const { return prepared_; }
  const OpCounters& creation_ops() const { return creation_ops_; }
  double creation_seconds() const { return creation_seconds_; }

 private:
  friend CacheEntry precompute(const Context&, const SlotVector&, const SelectionPolicy&, const PublicKey&, Rng&);
  CacheEntry() = default;

  SlotVector base_slots_;
  Plaintext base_plaintext_;
  Ciphertext base_ciphertext_;
  Ciphertext prepared_;
  OpCounters creation_ops_;
  double creation_seconds_ = 0;
};

/// Selects base values, encodes them through the explicit Vandermonde
/// system and encrypts once.
CacheEntry precompute(const Context& ctx, const SlotVector& candidates, const SelectionPolicy& policy,
                      const PublicKey& pk, Rng& rng);

/// Enc(b) * encode(m_i / b_i): scale squared, depth 1. Throws RangeError when
/// some m_i / b_i leaves the magnitude budget, ParameterError when m is
/// longer than the cache.
Ciphertext reconstruct(const Context& ctx, const CacheEntry& cache, const SlotVector& m);

/// ct + R(x) with R gaussian(sigma) rounded and reduced mod q.
Ciphertext randomize(const Context& ctx, const Ciphertext& ct, double sigma, Rng& rng);

/// reconstruct followed by randomize.
Ciphertext nemesis_encrypt(const Context& ctx, const CacheEntry& cache, const SlotVector& m, double sigma, Rng& rng);

std::size_t chunk_count(std::size_t total, std::size_t batch_size);

/// Slice [index * batch_size, ...) of weights; the last slice may be short.
SlotVector chunk_of(std::span<const double> weights, std::size_t batch_size, std::size_t index);

using CiphertextSink = std::function<void(std::size_t index, Ciphertext&& ct)>;

/// Encrypts consecutive batches of weights, handing each ciphertext to sink.
void chunk_and_encrypt(const Context& ctx, const CacheEntry& cache, std::span<const double> weights,
                       std::size_t batch_size, double sigma, Rng& rng, const CiphertextSink& sink);

std::vector<Ciphertext> chunk_and_encrypt(const Context& ctx, const CacheEntry& cache,
                                          std::span<const double> weights, std::size_t batch_size, double sigma,
                                          Rng& rng);

/// Throws ParameterError unless 1 <= batch_size <= limit.
void check_batch_size(std::size_t batch_size, std::size_t limit);

}  // namespace nemesis

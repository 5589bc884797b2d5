// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#include "nemesis/cache.hpp"

#include <algorithm>
#include <chrono>
#include <string>

#include "nemesis/errors.hpp"

namespace nemesis {

SelectionPolicy SelectionPolicy::all_ones(std::size_t d) {
  SelectionPolicy p;
  p.kind_ = Kind::kAllOnes;
  p.dimension_ = d;
  return p;
}

SelectionPolicy SelectionPolicy::fixed(SlotVector values) {
  SelectionPolicy p;
  p.kind_ = Kind::kFixedVector;
  p.dimension_ = static_cast<std::size_t>(values.size());
  p.values_ = std::move(values);
  return p;
}

SelectionPolicy SelectionPolicy::frequency_top_k(std::size_t d, std::map<double, std::uint64_t> histogram) {
  SelectionPolicy p;
  p.kind_ = Kind::kFrequencyTopK;
  p.dimension_ = d;
  p.histogram_ = std::move(histogram);
  return p;
}

SlotVector SelectionPolicy::select(const SlotVector& candidates) const {
  if (dimension_ == 0) throw CacheError("selection policy yields an empty base vector");
  SlotVector out;
  switch (kind_) {
    case Kind::kAllOnes:
      out = SlotVector::Ones(static_cast<Eigen::Index>(dimension_));
      break;
    case Kind::kFixedVector:
      out = values_;
      break;
    case Kind::kFrequencyTopK: {
      std::map<double, std::uint64_t> histogram = histogram_;
      if (histogram.empty()) {
        for (double v : candidates) ++histogram[v];
      }
      std::vector<std::pair<double, std::uint64_t>> ranked;
      for (const auto& [value, count] : histogram) {
        if (value != 0.0 && count > 0) ranked.emplace_back(value, count);
      }
      if (ranked.empty()) throw CacheError("no nonzero candidate to select");
      std::stable_sort(ranked.begin(), ranked.end(),
                       [](const auto& a, const auto& b) { return a.second > b.second; });
      out.resize(static_cast<Eigen::Index>(dimension_));
      for (std::size_t i = 0; i < dimension_; ++i) out[static_cast<Eigen::Index>(i)] = ranked[i % ranked.size()].first;
      break;
    }
  }
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (out[i] == 0.0) throw CacheError("base slot " + std::to_string(i) + " is zero");
  }
  return out;
}

CacheEntry CacheEntry::from_parts(const Context& ctx, SlotVector base_slots, Ciphertext base_ciphertext) {
  if (base_slots.size() == 0 || static_cast<std::size_t>(base_slots.size()) > ctx.slot_count()) {
    throw CacheError("cache dimension out of range");
  }
  if ((base_slots.array() == 0.0).any()) throw CacheError("base slots must be nonzero");
  if (base_ciphertext.depth() != 0 || base_ciphertext.scale() != ctx.scale()) {
    throw CacheError("base ciphertext must be a fresh depth-0 encryption");
  }
  if (!base_ciphertext.c0().ring().same_ring(*ctx.ring())) throw CacheError("base ciphertext ring mismatch");
  CacheEntry entry;
  entry.base_plaintext_ = encode_vandermonde(ctx, base_slots, build_vandermonde(ctx.slot_count(), ctx.slot_count()));
  entry.base_slots_ = std::move(base_slots);
  entry.base_ciphertext_ = Ciphertext(to_coefficient(base_ciphertext.c0()), to_coefficient(base_ciphertext.c1()),
                                      base_ciphertext.scale(), 0);
  entry.prepared_ = to_evaluation(entry.base_ciphertext_);
  return entry;
}

CacheEntry precompute(const Context& ctx, const SlotVector& candidates, const SelectionPolicy& policy,
                      const PublicKey& pk, Rng& rng) {
  const auto start = std::chrono::steady_clock::now();
  CounterScope scope;

  CacheEntry entry;
  entry.base_slots_ = policy.select(candidates);
  if (entry.dimension() > ctx.slot_count()) {
    throw CacheError("selected " + std::to_string(entry.dimension()) + " values, capacity is " +
                     std::to_string(ctx.slot_count()));
  }
  const VandermondeSystem<double> system = build_vandermonde(ctx.slot_count(), ctx.slot_count());
  entry.base_plaintext_ = encode_vandermonde(ctx, entry.base_slots_, system);
  entry.base_ciphertext_ = encrypt(ctx, pk, entry.base_plaintext_, rng);
  entry.prepared_ = to_evaluation(entry.base_ciphertext_);

  ++instrumentation::thread_counters().precomputes;
  entry.creation_ops_ = scope.delta();
  entry.creation_seconds_ = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return entry;
}

Ciphertext reconstruct(const Context& ctx, const CacheEntry& cache, const SlotVector& m) {
  if (!cache.prepared().c0().ring().same_ring(*ctx.ring())) throw ParameterError("cache belongs to another context");
  if (static_cast<std::size_t>(m.size()) > cache.dimension()) {
    throw ParameterError("batch of " + std::to_string(m.size()) + " exceeds cache dimension " +
                         std::to_string(cache.dimension()));
  }
  const SlotVector scaled = m.array() / cache.base_slots().head(m.size()).array();
  const Plaintext target = encode_fast(ctx, scaled);
  return mul_ct_pt(ctx, cache.prepared(), target);
}

Ciphertext randomize(const Context& ctx, const Ciphertext& ct, double sigma, Rng& rng) {
  if (!(sigma > 0.0)) throw ParameterError("randomization sigma must be positive");
  return add_ct_pt(ct, sample_gaussian(ctx.ring(), rng, sigma));
}

Ciphertext nemesis_encrypt(const Context& ctx, const CacheEntry& cache, const SlotVector& m, double sigma,
                           Rng& rng) {
  if (!(sigma > 0.0)) throw ParameterError("randomization sigma must be positive");
  return randomize(ctx, reconstruct(ctx, cache, m), sigma, rng);
}

std::size_t chunk_count(std::size_t total, std::size_t batch_size) {
  if (batch_size == 0) throw ParameterError("batch size must be positive");
  return (total + batch_size - 1) / batch_size;
}

SlotVector chunk_of(std::span<const double> weights, std::size_t batch_size, std::size_t index) {
  const std::size_t begin = index * batch_size;
  if (begin >= weights.size()) throw ParameterError("chunk index out of range");
  const std::size_t len = std::min(batch_size, weights.size() - begin);
  return Eigen::Map<const SlotVector>(weights.data() + begin, static_cast<Eigen::Index>(len));
}

void check_batch_size(std::size_t batch_size, std::size_t limit) {
  if (batch_size < 1 || batch_size > limit) {
    throw ParameterError("batch size " + std::to_string(batch_size) + " outside [1, " + std::to_string(limit) + "]");
  }
}

void chunk_and_encrypt(const Context& ctx, const CacheEntry& cache, std::span<const double> weights,
                       std::size_t batch_size, double sigma, Rng& rng, const CiphertextSink& sink) {
  check_batch_size(batch_size, ctx.slot_count());
  if (batch_size > cache.dimension()) throw ParameterError("batch size exceeds cache dimension");
  const std::size_t chunks = chunk_count(weights.size(), batch_size);
  for (std::size_t c = 0; c < chunks; ++c) {
    sink(c, nemesis_encrypt(ctx, cache, chunk_of(weights, batch_size, c), sigma, rng));
  }
}

std::vector<Ciphertext> chunk_and_encrypt(const Context& ctx, const CacheEntry& cache,
                                          std::span<const double> weights, std::size_t batch_size, double sigma,
                                          Rng& rng) {
  std::vector<Ciphertext> out;
  out.reserve(chunk_count(weights.size(), std::max<std::size_t>(batch_size, 1)));
  chunk_and_encrypt(ctx, cache, weights, batch_size, sigma, rng,
                    [&out](std::size_t, Ciphertext&& ct) { out.push_back(std::move(ct)); });
  return out;
}

}  // namespace nemesis

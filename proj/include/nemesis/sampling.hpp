// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "nemesis/ring.hpp"

namespace nemesis {

/// Seeded deterministic randomness handle. Move-only: each handle has a
/// single owner, and concurrent callers derive independent handles.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  Rng(const Rng&) = delete;
  Rng& operator=(const Rng&) = delete;
  Rng(Rng&&) noexcept = default;
  Rng& operator=(Rng&&) noexcept = default;

  /// Independent handle for stream `stream` of `seed`.
  static Rng derive(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in (0, 1], 53-bit resolution.
  double next_unit_open() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }
  /// Uniform in [0, bound), rejection sampled.
  std::uint64_t next_below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

/// Coefficients i.i.d. uniform in [0, q).
RingElement sample_uniform(const RingPtr& ring, Rng& rng);

/// Coefficients i.i.d. uniform in {-1, 0, 1}, stored as {q-1, 0, 1}.
RingElement sample_ternary(const RingPtr& ring, Rng& rng);

/// round(X) for X ~ N(0, sigma^2): inversion of a cumulative table, Box-Muller
/// above sigma = 64.
std::vector<std::int64_t> gaussian_integers(Rng& rng, double sigma, std::size_t count);

/// gaussian_integers reduced mod q. Throws ParameterError if sigma <= 0.
RingElement sample_gaussian(const RingPtr& ring, Rng& rng, double sigma);

}  // namespace nemesis

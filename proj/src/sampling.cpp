// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#include "nemesis/sampling.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "nemesis/counters.hpp"
#include "nemesis/errors.hpp"

namespace nemesis {

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

Rng Rng::derive(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x6e656d65u};
  Rng rng(0);
  rng.engine_.seed(seq);
  return rng;
}

std::uint64_t Rng::next_below(std::uint64_t bound) {
  if (bound == 0) throw ParameterError("next_below: empty range");
  const int bits = 64 - std::countl_zero(bound - 1);
  const std::uint64_t mask = bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
  for (;;) {
    const std::uint64_t x = engine_() & mask;
    if (x < bound) return x;
  }
}

RingElement sample_uniform(const RingPtr& ring, Rng& rng) {
  const u64 q = ring->modulus();
  std::vector<u64> values(ring->degree());
  for (auto& v : values) v = rng.next_below(q);
  ++instrumentation::thread_counters().uniform_samples;
  return RingElement(ring, std::move(values), Domain::kCoefficient);
}

RingElement sample_ternary(const RingPtr& ring, Rng& rng) {
  const u64 q = ring->modulus();
  std::vector<u64> values(ring->degree());
  std::uint64_t word = 0;
  int bits_left = 0;
  for (auto& v : values) {
    for (;;) {
      if (bits_left == 0) {
        word = rng.next_u64();
        bits_left = 64;
      }
      const unsigned two_bits = static_cast<unsigned>(word & 3);
      word >>= 2;
      bits_left -= 2;
      if (two_bits == 3) continue;
      v = two_bits == 0 ? q - 1 : two_bits - 1;  // {0,1,2} -> {-1,0,1}
      break;
    }
  }
  ++instrumentation::thread_counters().ternary_samples;
  return RingElement(ring, std::move(values), Domain::kCoefficient);
}

namespace {

// Above this sigma the cumulative table gets long; fall back to Box-Muller.
constexpr double kTableSigmaLimit = 64.0;
// Table covers |k| <= kTailSigmas * sigma; the remaining mass is below 2^-100.
constexpr double kTailSigmas = 14.0;

constexpr int kLookupBits = 12;
constexpr std::int16_t kAmbiguous = -1;

// cdf[k] = P(|round(X)| <= k) * 2^63 for X ~ N(0, sigma^2). lookup maps the
// top kLookupBits of a 63-bit draw to k when that whole range lands on one k.
struct MagnitudeTable {
  double sigma = 0;
  std::vector<std::uint64_t> cdf;
  std::vector<std::int16_t> lookup;
};

const MagnitudeTable& magnitude_table(double sigma) {
  thread_local MagnitudeTable table;
  if (table.sigma == sigma) return table;
  table.sigma = sigma;
  table.cdf.clear();
  const auto last = static_cast<std::int64_t>(std::ceil(kTailSigmas * sigma));
  for (std::int64_t k = 0; k <= last; ++k) {
    const double p = std::erf((static_cast<double>(k) + 0.5) / (sigma * std::numbers::sqrt2));
    table.cdf.push_back(p >= 1.0 ? ~std::uint64_t{0} >> 1 : static_cast<std::uint64_t>(std::ldexp(p, 63)));
  }
  table.cdf.back() = std::uint64_t{1} << 63;
  constexpr int shift = 63 - kLookupBits;
  table.lookup.assign(std::size_t{1} << kLookupBits, kAmbiguous);
  std::size_t k = 0;
  for (std::size_t cell = 0; cell < table.lookup.size(); ++cell) {
    const std::uint64_t lo = std::uint64_t{cell} << shift;
    const std::uint64_t hi = lo + ((std::uint64_t{1} << shift) - 1);
    while (lo >= table.cdf[k]) ++k;
    if (hi < table.cdf[k]) table.lookup[cell] = static_cast<std::int16_t>(k);
  }
  return table;
}

void box_muller(Rng& rng, double sigma, std::vector<std::int64_t>& out) {
  for (std::size_t i = 0; i < out.size(); i += 2) {
    const double radius = sigma * std::sqrt(-2.0 * std::log(rng.next_unit_open()));
    const double angle = 2.0 * std::numbers::pi * rng.next_unit_open();
    out[i] = static_cast<std::int64_t>(std::round(radius * std::cos(angle)));
    if (i + 1 < out.size()) out[i + 1] = static_cast<std::int64_t>(std::round(radius * std::sin(angle)));
  }
}

}  // namespace

std::vector<std::int64_t> gaussian_integers(Rng& rng, double sigma, std::size_t count) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ParameterError("gaussian sigma must be positive");
  std::vector<std::int64_t> out(count);
  if (sigma > kTableSigmaLimit) {
    box_muller(rng, sigma, out);
  } else {
    const MagnitudeTable& table = magnitude_table(sigma);
    for (auto& v : out) {
      const std::uint64_t word = rng.next_u64();
      const std::uint64_t u = word & (~std::uint64_t{0} >> 1);
      std::int64_t k = table.lookup[u >> (63 - kLookupBits)];
      if (k == kAmbiguous) {
        k = 0;
        while (u >= table.cdf[static_cast<std::size_t>(k)]) ++k;
      }
      v = (word >> 63) ? -k : k;
    }
  }
  instrumentation::thread_counters().gaussian_samples += count;
  return out;
}

RingElement sample_gaussian(const RingPtr& ring, Rng& rng, double sigma) {
  const auto draws = gaussian_integers(rng, sigma, ring->degree());
  return RingElement::from_signed(ring, draws);
}

}  // namespace nemesis

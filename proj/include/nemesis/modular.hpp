// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace nemesis {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// All helpers assume a modulus below 2^62 and operands already reduced.

constexpr u64 add_mod(u64 a, u64 b, u64 q) {
  const u64 s = a + b;
  return s >= q ? s - q : s;
}

constexpr u64 sub_mod(u64 a, u64 b, u64 q) { return a >= b ? a - b : a + (q - b); }

constexpr u64 neg_mod(u64 a, u64 q) { return a == 0 ? 0 : q - a; }

constexpr u64 mul_mod(u64 a, u64 b, u64 q) {
  return static_cast<u64>(static_cast<u128>(a) * b % q);
}

u64 pow_mod(u64 base, u64 exponent, u64 q);

/// Inverse modulo a prime via Fermat's little theorem.
u64 inv_mod(u64 a, u64 q);

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(u64 n);

/// Maps a signed integer to its residue in [0, q).
constexpr u64 to_residue(std::int64_t v, u64 q) {
  if (v >= 0) return static_cast<u64>(v) < q ? static_cast<u64>(v) : static_cast<u64>(v) % q;
  const u64 mag = static_cast<u64>(-(v + 1)) + 1;  // |v| without overflow at INT64_MIN
  const u64 r = mag < q ? mag : mag % q;
  return r == 0 ? 0 : q - r;
}

/// Centered lift of a residue into (-q/2, q/2].
constexpr std::int64_t centered(u64 r, u64 q) {
  return r > q / 2 ? -static_cast<std::int64_t>(q - r) : static_cast<std::int64_t>(r);
}

/// Barrett reduction of full 128-bit products for a fixed modulus.
class BarrettReducer {
 public:
  BarrettReducer() = default;
  explicit BarrettReducer(u64 q);

  u64 modulus() const { return q_; }

  u64 reduce(u128 x) const {
    const u64 lo = static_cast<u64>(x);
    const u64 hi = static_cast<u64>(x >> 64);
    // quotient estimate: floor(x * floor(2^128 / q) / 2^128), short by at most 2
    const u128 lo_lo = (static_cast<u128>(lo) * ratio_lo_) >> 64;
    const u128 lo_hi = static_cast<u128>(lo) * ratio_hi_;
    const u128 hi_lo = static_cast<u128>(hi) * ratio_lo_;
    const u128 mid = lo_lo + static_cast<u64>(lo_hi) + static_cast<u64>(hi_lo);
    const u64 quotient = hi * ratio_hi_ + static_cast<u64>(lo_hi >> 64) +
                         static_cast<u64>(hi_lo >> 64) + static_cast<u64>(mid >> 64);
    u64 r = lo - quotient * q_;
    if (r >= q_) r -= q_;
    if (r >= q_) r -= q_;
    return r;
  }

  u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }

 private:
  u64 q_ = 0;
  u64 ratio_lo_ = 0;
  u64 ratio_hi_ = 0;
};

/// Precomputed floor(w * 2^64 / q) for repeated multiplication by a constant w.
constexpr u64 shoup_precompute(u64 w, u64 q) {
  return static_cast<u64>((static_cast<u128>(w) << 64) / q);
}

/// x * w mod q up to one multiple of q: result in [0, 2q).
constexpr u64 mul_shoup_lazy(u64 x, u64 w, u64 w_shoup, u64 q) {
  const u64 quotient = static_cast<u64>((static_cast<u128>(x) * w_shoup) >> 64);
  return x * w - quotient * q;
}

constexpr u64 mul_shoup(u64 x, u64 w, u64 w_shoup, u64 q) {
  const u64 quotient = static_cast<u64>((static_cast<u128>(x) * w_shoup) >> 64);
  const u64 r = x * w - quotient * q;
  return r >= q ? r - q : r;
}

}  // namespace nemesis

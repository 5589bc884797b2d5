// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#include "nemesis/modular.hpp"

#include <array>

#include "nemesis/errors.hpp"

namespace nemesis {

u64 pow_mod(u64 base, u64 exponent, u64 q) {
  u64 result = 1 % q;
  base %= q;
  while (exponent > 0) {
    if (exponent & 1) result = mul_mod(result, base, q);
    base = mul_mod(base, base, q);
    exponent >>= 1;
  }
  return result;
}

u64 inv_mod(u64 a, u64 q) {
  if (a % q == 0) throw ParameterError("inv_mod: zero has no inverse");
  return pow_mod(a, q - 2, q);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  constexpr std::array<u64, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : bases) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : bases) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

BarrettReducer::BarrettReducer(u64 q) : q_(q) {
  if (q < 2 || q >= (u64{1} << 62)) throw ParameterError("BarrettReducer: modulus out of range");
  const u128 ratio = ~u128{0} / q;  // q odd, so equals floor(2^128 / q)
  ratio_lo_ = static_cast<u64>(ratio);
  ratio_hi_ = static_cast<u64>(ratio >> 64);
}

}  // namespace nemesis

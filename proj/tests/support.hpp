// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

// Reference implementations used as independent oracles by the tests.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "nemesis/ckks.hpp"

namespace nemesis::testing {

inline SlotVector random_slots(Rng& rng, std::size_t n, double bound = 1.0) {
  SlotVector m(static_cast<Eigen::Index>(n));
  for (auto& v : m) v = bound * (2.0 * rng.next_unit_open() - 1.0);
  return m;
}

inline double max_diff(const SlotVector& a, const SlotVector& b) {
  return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

/// O(N^2) product in Z_q[X]/(X^N + 1).
inline std::vector<u64> schoolbook_negacyclic(std::span<const u64> a, std::span<const u64> b, u64 q) {
  const std::size_t n = a.size();
  std::vector<u64> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const u64 p = mul_mod(a[i], b[j], q);
      const std::size_t k = i + j;
      if (k < n) {
        out[k] = add_mod(out[k], p, q);
      } else {
        out[k - n] = sub_mod(out[k - n], p, q);
      }
    }
  }
  return out;
}

/// Slot values by direct evaluation of the real polynomial at
/// zeta^(4k+1), zeta = exp(i*pi/N), k < N/2, divided by scale.
inline Eigen::VectorXcd evaluate_slots(const std::vector<double>& coeffs, double scale) {
  const std::size_t n = coeffs.size();
  Eigen::VectorXcd out(static_cast<Eigen::Index>(n / 2));
  for (std::size_t k = 0; k < n / 2; ++k) {
    std::complex<long double> acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const long double angle =
          std::numbers::pi_v<long double> * static_cast<long double>(((4 * k + 1) * j) % (2 * n)) / n;
      acc += static_cast<long double>(coeffs[j]) * std::polar(1.0L, angle);
    }
    out[static_cast<Eigen::Index>(k)] = std::complex<double>(acc) / scale;
  }
  return out;
}

inline std::vector<double> centered_coefficients(const RingElement& x) {
  const RingElement c = to_coefficient(x);
  std::vector<double> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = static_cast<double>(centered(c[i], c.ring().modulus()));
  return out;
}

}  // namespace nemesis::testing

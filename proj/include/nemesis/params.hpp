// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>

namespace nemesis {

/// 59-bit NTT-friendly prime, 2^59 - 8191, congruent to 1 mod 8192.
/// Admits a negacyclic NTT for every power-of-two ring degree up to 4096.
inline constexpr std::uint64_t kDefaultModulus = 576460752303415297ULL;

struct SchemeParams {
  std::size_t ring_degree = 4096;
  std::uint64_t modulus = kDefaultModulus;
  double scale = 33554432.0;  // 2^25
  double encryption_sigma = 3.2;
  double randomization_sigma = 3.2;
  /// Largest |slot value| accepted by the encoder. scale^2 times this
  /// must stay below q/2 so one plaintext multiplication still decrypts.
  double max_message_magnitude = 64.0;

  std::size_t slot_count() const { return ring_degree / 2; }

  /// Throws ParameterError describing the first violated invariant.
  void validate() const;

  bool operator==(const SchemeParams&) const = default;
};

/// N = 4096, q = kDefaultModulus, scale 2^25, sigma 3.2.
SchemeParams default_params();

/// Same modulus and scale at a smaller ring degree, for tests.
SchemeParams params_with_degree(std::size_t ring_degree);

bool is_power_of_two(std::size_t n);

}  // namespace nemesis

// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#include "nemesis/params.hpp"

#include <cmath>
#include <string>

#include "nemesis/errors.hpp"
#include "nemesis/modular.hpp"

namespace nemesis {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void SchemeParams::validate() const {
  if (!is_power_of_two(ring_degree) || ring_degree < 8) {
    throw ParameterError("ring degree must be a power of two >= 8, got " +
                         std::to_string(ring_degree));
  }
  if (modulus >= (std::uint64_t{1} << 62)) throw ParameterError("modulus must be below 2^62");
  if (!is_prime(modulus)) throw ParameterError("modulus is not prime");
  if (modulus % (2 * ring_degree) != 1) {
    throw ParameterError("modulus must be 1 mod 2N for a negacyclic NTT");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ParameterError("scale must be positive");
  const double log_scale = std::log2(scale);
  if (log_scale != std::floor(log_scale)) throw ParameterError("scale must be a power of two");
  if (!(encryption_sigma > 0.0)) throw ParameterError("encryption sigma must be positive");
  if (!(randomization_sigma > 0.0)) throw ParameterError("randomization sigma must be positive");
  if (!(max_message_magnitude > 0.0)) throw ParameterError("max message magnitude must be positive");
  const long double headroom = static_cast<long double>(scale) * scale * max_message_magnitude;
  if (headroom >= static_cast<long double>(modulus) / 2) {
    throw ParameterError("scale^2 * max_message_magnitude must stay below q/2");
  }
}

SchemeParams default_params() { return SchemeParams{}; }

SchemeParams params_with_degree(std::size_t ring_degree) {
  SchemeParams p;
  p.ring_degree = ring_degree;
  return p;
}

}  // namespace nemesis

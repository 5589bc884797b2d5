// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <ostream>

namespace nemesis {

/// Operation counts. Samples of ternary and uniform polynomials are counted
/// per polynomial; gaussian samples are counted per coefficient.
struct OpCounters {
  std::uint64_t ntt_forward = 0;
  std::uint64_t ntt_inverse = 0;
  std::uint64_t ring_muls = 0;
  std::uint64_t public_key_muls = 0;
  std::uint64_t encryptions = 0;
  std::uint64_t ternary_samples = 0;
  std::uint64_t uniform_samples = 0;
  std::uint64_t gaussian_samples = 0;
  std::uint64_t ct_additions = 0;
  std::uint64_t precomputes = 0;

  std::uint64_t ntts() const { return ntt_forward + ntt_inverse; }

  OpCounters& operator+=(const OpCounters& o);
  friend OpCounters operator+(OpCounters a, const OpCounters& b) { return a += b; }
  friend OpCounters operator-(const OpCounters& a, const OpCounters& b);
  bool operator==(const OpCounters&) const = default;
};

std::ostream& operator<<(std::ostream& os, const OpCounters& c);

namespace instrumentation {

/// Counters of the calling thread. Never shared between threads.
OpCounters& thread_counters();

}  // namespace instrumentation

/// Captures the operations performed on this thread during its lifetime.
class CounterScope {
 public:
  CounterScope() : start_(instrumentation::thread_counters()) {}
  OpCounters delta() const { return instrumentation::thread_counters() - start_; }

 private:
  OpCounters start_;
};

}  // namespace nemesis

// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstddef>

#include "nemesis/context.hpp"
#include "nemesis/embedding.hpp"
#include "nemesis/ring.hpp"

namespace nemesis {

/// Real message values, at most slot_count() of them.
using SlotVector = Eigen::VectorXd;

struct Plaintext {
  RingElement poly;  // coefficient domain
  double scale = 0;
  std::size_t slots_used = 0;
};

/// Vandermonde system of dimension d; throws ParameterError unless d is a
/// power of two no larger than slot_capacity.
VandermondeSystem<double> build_vandermonde(std::size_t d, std::size_t slot_capacity);

/// Encodes m (zero-padded to slot_count) at the context scale by solving the
/// slot-count-dimensional Vandermonde system. Values must be finite and
/// within max_message_magnitude, otherwise RangeError.
Plaintext encode_vandermonde(const Context& ctx, const SlotVector& m, const VandermondeSystem<double>& system);

/// Transform-based encoding with the same contract as encode_vandermonde.
Plaintext encode_fast(const Context& ctx, const SlotVector& m);
Plaintext encode_fast(const Context& ctx, const SlotVector& m, double scale);

/// Evaluates pt.poly at the slot points, divides by pt.scale and returns the
/// first pt.slots_used real parts.
SlotVector decode(const Context& ctx, const Plaintext& pt);

/// Throws RangeError if any value is non-finite or exceeds the magnitude budget.
void check_message_range(const Context& ctx, const SlotVector& m);

}  // namespace nemesis

// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#include "nemesis/encoding.hpp"

#include <cmath>
#include <string>

#include "nemesis/errors.hpp"

namespace nemesis {
namespace {

Plaintext to_plaintext(const Context& ctx, const IntVector& coeffs, double scale, std::size_t slots_used) {
  return Plaintext{RingElement::from_signed(ctx.ring(), std::span(coeffs.data(), coeffs.size())), scale,
                   slots_used};
}

void check_length(const Context& ctx, const SlotVector& m) {
  if (static_cast<std::size_t>(m.size()) > ctx.slot_count()) {
    throw ParameterError("message has " + std::to_string(m.size()) + " values, capacity is " +
                         std::to_string(ctx.slot_count()));
  }
}

}  // namespace

VandermondeSystem<double> build_vandermonde(std::size_t d, std::size_t slot_capacity) {
  if (!is_power_of_two(d)) throw ParameterError("Vandermonde dimension must be a power of two");
  if (d > slot_capacity) throw ParameterError("Vandermonde dimension exceeds slot capacity");
  return VandermondeSystem<double>(d);
}

void check_message_range(const Context& ctx, const SlotVector& m) {
  const double bound = ctx.params().max_message_magnitude;
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    if (!std::isfinite(m[i])) throw RangeError("slot value is not finite");
    if (std::abs(m[i]) > bound) {
      throw RangeError("slot value " + std::to_string(m[i]) + " exceeds magnitude budget " +
                       std::to_string(bound));
    }
  }
}

Plaintext encode_vandermonde(const Context& ctx, const SlotVector& m, const VandermondeSystem<double>& system) {
  check_length(ctx, m);
  check_message_range(ctx, m);
  if (system.dimension() != ctx.slot_count()) {
    throw ParameterError("Vandermonde system dimension must equal the slot count");
  }
  const IntVector coeffs = embed_vandermonde(ctx.embedding(), system, m, ctx.scale());
  return to_plaintext(ctx, coeffs, ctx.scale(), static_cast<std::size_t>(m.size()));
}

Plaintext encode_fast(const Context& ctx, const SlotVector& m) { return encode_fast(ctx, m, ctx.scale()); }

Plaintext encode_fast(const Context& ctx, const SlotVector& m, double scale) {
  check_length(ctx, m);
  check_message_range(ctx, m);
  if (!(scale > 0)) throw ParameterError("encoding scale must be positive");
  const IntVector coeffs = embed_fast(ctx.embedding(), m, scale);
  return to_plaintext(ctx, coeffs, scale, static_cast<std::size_t>(m.size()));
}

SlotVector decode(const Context& ctx, const Plaintext& pt) {
  if (!(pt.scale > 0)) throw ParameterError("decode: plaintext scale must be positive");
  if (pt.poly.empty() || !pt.poly.ring().same_ring(*ctx.ring())) {
    throw ParameterError("decode: plaintext does not belong to this context");
  }
  const RingElement coeff_form = to_coefficient(pt.poly);
  const u64 q = ctx.params().modulus;
  Eigen::VectorXd lifted(coeff_form.size());
  for (std::size_t i = 0; i < coeff_form.size(); ++i) {
    lifted[static_cast<Eigen::Index>(i)] = static_cast<double>(centered(coeff_form[i], q));
  }
  const Eigen::VectorXd slots = unembed(ctx.embedding(), lifted, pt.scale);
  if (pt.slots_used > static_cast<std::size_t>(slots.size())) throw ParameterError("decode: slots_used too large");
  return slots.head(static_cast<Eigen::Index>(pt.slots_used));
}

}  // namespace nemesis

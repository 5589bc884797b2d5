// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "nemesis/context.hpp"
#include "nemesis/encoding.hpp"
#include "nemesis/ring.hpp"
#include "nemesis/sampling.hpp"

namespace nemesis {

struct SecretKey {
  RingElement s;       // ternary, coefficient domain
  RingElement s_eval;  // cached evaluation form
};

/// pk0 + pk1 * s = e with e small. Components are kept in both domains.
struct PublicKey {
  RingElement pk0;
  RingElement pk1;
  RingElement pk0_eval;
  RingElement pk1_eval;
};

struct KeyPair {
  SecretKey secret;
  PublicKey public_key;
};

/// (c0, c1) with c0 + c1 * s ~ scale * message. depth 0 carries the context
/// scale, depth 1 its square. Both components share ring and domain.
class Ciphertext {
 public:
  Ciphertext() = default;
  Ciphertext(RingElement c0, RingElement c1, double scale, int depth);

  const RingElement& c0() const { return c0_; }
  const RingElement& c1() const { return c1_; }
  double scale() const { return scale_; }
  int depth() const { return depth_; }
  Domain domain() const { return c0_.domain(); }

  bool operator==(const Ciphertext&) const = default;

 private:
  RingElement c0_;
  RingElement c1_;
  double scale_ = 0;
  int depth_ = 0;
};

/// Ternary secret, uniform a, gaussian e: pk = (-a*s + e, a).
KeyPair keygen(const Context& ctx, Rng& rng);

/// (u*pk0 + e0 + m, u*pk1 + e1); u ternary, e0 and e1 gaussian(encryption_sigma).
/// Requires pt.scale equal to the context scale.
Ciphertext encrypt(const Context& ctx, const PublicKey& pk, const Plaintext& pt, Rng& rng);

/// c0 + c1 * s, carrying ct.scale and all slots.
Plaintext decrypt(const Context& ctx, const SecretKey& sk, const Ciphertext& ct);

/// decode(decrypt(...)) truncated to `count` values.
SlotVector decrypt_values(const Context& ctx, const SecretKey& sk, const Ciphertext& ct, std::size_t count);

/// Component-wise sum; scale, depth and domain must match.
Ciphertext add_ct_ct(const Ciphertext& a, const Ciphertext& b);

/// Adds a raw polynomial into c0 only; c1 and the scale are untouched.
Ciphertext add_ct_pt(const Ciphertext& ct, const RingElement& p);

/// (c0 * p, c1 * p) in the coefficient domain, scale squared, depth 1.
/// Throws DepthExhaustedError if ct is already at depth 1.
Ciphertext mul_ct_pt(const Context& ctx, const Ciphertext& ct, const Plaintext& pt);

Ciphertext negate(const Ciphertext& ct);

/// Components moved to the evaluation domain, for repeated multiplication.
Ciphertext to_evaluation(const Ciphertext& ct);

/// The trivial encryption (0, 0) at depth 0.
Ciphertext zero_ciphertext(const Context& ctx);

}  // namespace nemesis

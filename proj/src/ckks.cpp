// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#include "nemesis/ckks.hpp"

#include <cmath>

#include "nemesis/counters.hpp"
#include "nemesis/errors.hpp"

namespace nemesis {
namespace {

// Public-key residual e must stay within this many standard deviations.
constexpr double kKeyNoiseBoundSigmas = 10.0;

void require_context_ring(const Context& ctx, const RingElement& x, const char* what) {
  if (x.empty() || !x.ring().same_ring(*ctx.ring())) {
    throw ParameterError(std::string(what) + " does not belong to this context");
  }
}

}  // namespace

Ciphertext::Ciphertext(RingElement c0, RingElement c1, double scale, int depth)
    : c0_(std::move(c0)), c1_(std::move(c1)), scale_(scale), depth_(depth) {
  if (c0_.empty() || c1_.empty() || !c0_.ring().same_ring(c1_.ring())) {
    throw ParameterError("ciphertext components must share one ring");
  }
  if (c0_.domain() != c1_.domain()) throw DomainError("ciphertext components must share one domain");
  if (depth_ != 0 && depth_ != 1) throw ParameterError("ciphertext depth must be 0 or 1");
  if (!(scale_ > 0)) throw ParameterError("ciphertext scale must be positive");
}

KeyPair keygen(const Context& ctx, Rng& rng) {
  const RingPtr& ring = ctx.ring();
  const double sigma = ctx.params().encryption_sigma;
  RingElement s = sample_ternary(ring, rng);
  RingElement s_eval = ntt_forward(s);
  const RingElement a = sample_uniform(ring, rng);
  const RingElement e = sample_gaussian(ring, rng, sigma);
  RingElement a_eval = ntt_forward(a);
  const RingElement as = ntt_inverse(ring_mul(a_eval, s_eval));
  RingElement pk0 = ring_sub(e, as);

  // pk0 + pk1*s must equal the small error polynomial
  const RingElement residual = ring_add(pk0, as);
  const double bound = kKeyNoiseBoundSigmas * sigma;
  for (u64 v : residual.values()) {
    if (std::abs(static_cast<double>(centered(v, ring->modulus()))) > bound) {
      throw Error("keygen: public key residual exceeds noise bound");
    }
  }

  RingElement pk0_eval = ntt_forward(pk0);
  return KeyPair{SecretKey{std::move(s), std::move(s_eval)},
                 PublicKey{std::move(pk0), a, std::move(pk0_eval), std::move(a_eval)}};
}

Ciphertext encrypt(const Context& ctx, const PublicKey& pk, const Plaintext& pt, Rng& rng) {
  require_context_ring(ctx, pt.poly, "plaintext");
  if (pt.scale != ctx.scale()) throw ScaleMismatchError("encrypt: plaintext scale must equal the context scale");
  const RingPtr& ring = ctx.ring();
  const double sigma = ctx.params().encryption_sigma;

  const RingElement u = ntt_forward(sample_ternary(ring, rng));
  const RingElement e0 = sample_gaussian(ring, rng, sigma);
  const RingElement e1 = sample_gaussian(ring, rng, sigma);
  RingElement c0 = ntt_inverse(ring_mul(pk.pk0_eval, u));
  RingElement c1 = ntt_inverse(ring_mul(pk.pk1_eval, u));
  c0 = ring_add(ring_add(c0, e0), to_coefficient(pt.poly));
  c1 = ring_add(c1, e1);

  auto& counters = instrumentation::thread_counters();
  counters.public_key_muls += 2;
  ++counters.encryptions;
  return Ciphertext(std::move(c0), std::move(c1), pt.scale, 0);
}

Plaintext decrypt(const Context& ctx, const SecretKey& sk, const Ciphertext& ct) {
  require_context_ring(ctx, ct.c0(), "ciphertext");
  RingElement c1s = ring_mul(to_evaluation(ct.c1()), sk.s_eval);
  RingElement poly = ring_add(to_coefficient(ct.c0()), ntt_inverse(c1s));
  return Plaintext{std::move(poly), ct.scale(), ctx.slot_count()};
}

SlotVector decrypt_values(const Context& ctx, const SecretKey& sk, const Ciphertext& ct, std::size_t count) {
  Plaintext pt = decrypt(ctx, sk, ct);
  pt.slots_used = count;
  return decode(ctx, pt);
}

Ciphertext add_ct_ct(const Ciphertext& a, const Ciphertext& b) {
  if (a.depth() != b.depth() || a.scale() != b.scale()) {
    throw ScaleMismatchError("add_ct_ct: operands differ in scale or depth");
  }
  ++instrumentation::thread_counters().ct_additions;
  return Ciphertext(ring_add(a.c0(), b.c0()), ring_add(a.c1(), b.c1()), a.scale(), a.depth());
}

Ciphertext add_ct_pt(const Ciphertext& ct, const RingElement& p) {
  if (p.empty() || !p.ring().same_ring(ct.c0().ring())) throw ParameterError("add_ct_pt: ring mismatch");
  const RingElement addend = ct.domain() == Domain::kEvaluation ? to_evaluation(p) : to_coefficient(p);
  return Ciphertext(ring_add(ct.c0(), addend), ct.c1(), ct.scale(), ct.depth());
}

Ciphertext mul_ct_pt(const Context& ctx, const Ciphertext& ct, const Plaintext& pt) {
  if (ct.depth() != 0) throw DepthExhaustedError("mul_ct_pt: ciphertext already consumed its multiplication");
  if (ct.scale() != ctx.scale() || pt.scale != ctx.scale()) {
    throw ScaleMismatchError("mul_ct_pt: both operands must carry the context scale");
  }
  require_context_ring(ctx, ct.c0(), "ciphertext");
  require_context_ring(ctx, pt.poly, "plaintext");
  const RingElement p = to_evaluation(pt.poly);
  RingElement c0 = ntt_inverse(ring_mul(to_evaluation(ct.c0()), p));
  RingElement c1 = ntt_inverse(ring_mul(to_evaluation(ct.c1()), p));
  return Ciphertext(std::move(c0), std::move(c1), ct.scale() * pt.scale, 1);
}

Ciphertext negate(const Ciphertext& ct) {
  return Ciphertext(ring_neg(ct.c0()), ring_neg(ct.c1()), ct.scale(), ct.depth());
}

Ciphertext to_evaluation(const Ciphertext& ct) {
  return Ciphertext(to_evaluation(ct.c0()), to_evaluation(ct.c1()), ct.scale(), ct.depth());
}

Ciphertext zero_ciphertext(const Context& ctx) {
  return Ciphertext(RingElement(ctx.ring()), RingElement(ctx.ring()), ctx.scale(), 0);
}

}  // namespace nemesis

// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "nemesis/ckks.hpp"
#include "nemesis/counters.hpp"
#include "nemesis/errors.hpp"
#include "support.hpp"
#include "tolerances.hpp"

using namespace nemesis;
using testing::max_diff;
using testing::random_slots;

namespace {

struct Fixture {
  Context ctx{default_params()};
  Rng rng{2024};
  KeyPair keys = keygen(ctx, rng);

  Ciphertext enc(const SlotVector& m) { return encrypt(ctx, keys.public_key, encode_fast(ctx, m), rng); }
  SlotVector dec(const Ciphertext& ct) { return decrypt_values(ctx, keys.secret, ct, ctx.slot_count()); }
  std::size_t d() const { return ctx.slot_count(); }
};

}  // namespace

TEST_CASE("keys are well formed and reproducible") {
  const Context ctx(default_params());
  Rng a(1);
  Rng b(1);
  Rng c(2);
  const KeyPair k1 = keygen(ctx, a);
  const KeyPair k2 = keygen(ctx, b);
  const KeyPair k3 = keygen(ctx, c);
  CHECK(k1.secret.s == k2.secret.s);
  CHECK(k1.public_key.pk0 == k2.public_key.pk0);
  CHECK_FALSE(k1.public_key.pk0 == k3.public_key.pk0);
  const u64 q = ctx.params().modulus;
  for (u64 v : k1.secret.s.values()) CHECK((v == 0 || v == 1 || v == q - 1));
  // pk0 + pk1 * s is small
  const RingElement residual = ring_add(k1.public_key.pk0, ring_mul(k1.public_key.pk1, k1.secret.s));
  for (u64 v : residual.values()) CHECK(std::abs(centered(v, q)) <= 40);
}

TEST_CASE("fresh encryptions decrypt within the fresh tolerance") {
  Fixture f;
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const SlotVector m = t == 0 ? SlotVector::Zero(static_cast<Eigen::Index>(f.d())) : random_slots(f.rng, f.d());
    worst = std::max(worst, max_diff(f.dec(f.enc(m)), m));
  }
  CHECK(worst <= tolerances::kFresh);
}

TEST_CASE("encryption is randomized and counted") {
  Fixture f;
  const Plaintext pt = encode_fast(f.ctx, SlotVector::Ones(4));
  CounterScope scope;
  const Ciphertext a = encrypt(f.ctx, f.keys.public_key, pt, f.rng);
  const OpCounters ops = scope.delta();
  CHECK(ops.encryptions == 1);
  CHECK(ops.ternary_samples == 1);
  CHECK(ops.gaussian_samples == 2 * f.ctx.degree());
  CHECK(ops.ring_muls == 2);
  CHECK(ops.public_key_muls == 2);
  CHECK(ops.ntt_forward == 1);
  CHECK(ops.ntt_inverse == 2);
  const Ciphertext b = encrypt(f.ctx, f.keys.public_key, pt, f.rng);
  CHECK_FALSE(a.c0() == b.c0());
  CHECK_FALSE(a.c1() == b.c1());
  CHECK(a.scale() == f.ctx.scale());
  CHECK(a.depth() == 0);
}

TEST_CASE("encrypt requires the context scale") {
  Fixture f;
  const Plaintext pt = encode_fast(f.ctx, SlotVector::Ones(4), f.ctx.scale() * 2);
  CHECK_THROWS_AS(encrypt(f.ctx, f.keys.public_key, pt, f.rng), ScaleMismatchError);
}

TEST_CASE("decryption is linear") {
  Fixture f;
  const Ciphertext a = f.enc(random_slots(f.rng, f.d()));
  const Ciphertext z = f.enc(SlotVector::Zero(static_cast<Eigen::Index>(f.d())));
  const Plaintext lhs = decrypt(f.ctx, f.keys.secret, add_ct_ct(a, z));
  const RingElement rhs = ring_add(decrypt(f.ctx, f.keys.secret, a).poly, decrypt(f.ctx, f.keys.secret, z).poly);
  CHECK(lhs.poly == rhs);
  CHECK(decrypt(f.ctx, f.keys.secret, zero_ciphertext(f.ctx)).poly.is_zero());
}

TEST_CASE("ciphertext addition") {
  Fixture f;
  const SlotVector m1 = random_slots(f.rng, f.d());
  const SlotVector m2 = random_slots(f.rng, f.d());
  CHECK(max_diff(f.dec(add_ct_ct(f.enc(m1), f.enc(SlotVector::Zero(static_cast<Eigen::Index>(f.d()))))), m1) <=
        2 * tolerances::kFresh);
  CHECK(max_diff(f.dec(add_ct_ct(f.enc(m1), f.enc(m2))), m1 + m2) <= 2 * tolerances::kFresh);

  const SlotVector ones = SlotVector::Ones(static_cast<Eigen::Index>(f.d()));
  Ciphertext sum = f.enc(ones);
  for (int k = 1; k < 20; ++k) sum = add_ct_ct(sum, f.enc(ones));
  CHECK(max_diff(f.dec(sum), 20 * ones) <= 20 * tolerances::kFresh);

  const Ciphertext deep = mul_ct_pt(f.ctx, f.enc(m1), encode_fast(f.ctx, m2));
  CHECK_THROWS_AS(add_ct_ct(deep, f.enc(m1)), ScaleMismatchError);
}

TEST_CASE("plaintext addition touches c0 only") {
  Fixture f;
  const Ciphertext ct = f.enc(random_slots(f.rng, f.d()));
  CHECK(add_ct_pt(ct, RingElement(f.ctx.ring())) == ct);
  const RingElement p = sample_gaussian(f.ctx.ring(), f.rng, 3.2);
  const Ciphertext sum = add_ct_pt(ct, p);
  CHECK(sum.c1() == ct.c1());
  CHECK(decrypt(f.ctx, f.keys.secret, sum).poly == ring_add(decrypt(f.ctx, f.keys.secret, ct).poly, p));
  const Ciphertext ev = to_evaluation(ct);
  CHECK(to_coefficient(add_ct_pt(ev, p).c0()) == sum.c0());
  const Context other(params_with_degree(16));
  CHECK_THROWS_AS(add_ct_pt(ct, RingElement(other.ring())), ParameterError);
}

TEST_CASE("ciphertext-plaintext multiplication") {
  Fixture f;
  const SlotVector a = random_slots(f.rng, f.d());
  const Ciphertext ct = f.enc(a);
  const Ciphertext by_one = mul_ct_pt(f.ctx, ct, encode_fast(f.ctx, SlotVector::Ones(static_cast<Eigen::Index>(f.d()))));
  CHECK(by_one.scale() == f.ctx.scale() * f.ctx.scale());
  CHECK(by_one.depth() == 1);
  CHECK(max_diff(f.dec(by_one), a) <= tolerances::kMult);
  const Ciphertext by_zero = mul_ct_pt(f.ctx, ct, encode_fast(f.ctx, SlotVector::Zero(static_cast<Eigen::Index>(f.d()))));
  CHECK(f.dec(by_zero).cwiseAbs().maxCoeff() <= tolerances::kMult);
  CHECK_THROWS_AS(mul_ct_pt(f.ctx, by_one, encode_fast(f.ctx, a)), DepthExhaustedError);
  CHECK_THROWS_AS(mul_ct_pt(f.ctx, ct, encode_fast(f.ctx, a, f.ctx.scale() * 2)), ScaleMismatchError);
}

TEST_CASE("ciphertext-plaintext product at N = 16") {
  const Context ctx(params_with_degree(16));
  Rng rng(99);
  for (int t = 0; t < 200; ++t) {
    const KeyPair keys = keygen(ctx, rng);
    const SlotVector a = random_slots(rng, 8);
    const SlotVector b = random_slots(rng, 8);
    const Ciphertext prod = mul_ct_pt(ctx, encrypt(ctx, keys.public_key, encode_fast(ctx, a), rng), encode_fast(ctx, b));
    const SlotVector got = decrypt_values(ctx, keys.secret, prod, 8);
    CHECK(max_diff(got, a.cwiseProduct(b)) <= tolerances::kMult);
    // direct evaluation of the decrypted polynomial
    const Plaintext pt = decrypt(ctx, keys.secret, prod);
    const Eigen::VectorXcd direct = testing::evaluate_slots(testing::centered_coefficients(pt.poly), pt.scale);
    CHECK(max_diff(direct.real(), a.cwiseProduct(b)) <= tolerances::kMult);
  }
}

TEST_CASE("scale bookkeeping") {
  Fixture f;
  const Ciphertext ct = f.enc(SlotVector::Ones(4));
  CHECK(negate(ct).scale() == ct.scale());
  CHECK(add_ct_ct(ct, ct).scale() == ct.scale());
  CHECK(add_ct_pt(ct, RingElement(f.ctx.ring())).scale() == ct.scale());
  CHECK(to_evaluation(ct).scale() == ct.scale());
  const Ciphertext m = mul_ct_pt(f.ctx, ct, encode_fast(f.ctx, SlotVector::Ones(4)));
  CHECK(m.scale() == ct.scale() * ct.scale());
  CHECK(add_ct_ct(m, m).depth() == 1);
  CHECK_THROWS_AS(Ciphertext(ct.c0(), ct.c1(), ct.scale(), 2), ParameterError);
  CHECK_THROWS_AS(Ciphertext(ct.c0(), to_evaluation(ct.c1()), ct.scale(), 0), DomainError);
  CHECK_THROWS_AS(Ciphertext(ct.c0(), ct.c1(), 0.0, 0), ParameterError);
}

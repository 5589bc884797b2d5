// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#include <set>

#include "doctest.h"
#include "nemesis/cache.hpp"
#include "nemesis/errors.hpp"
#include "support.hpp"
#include "tolerances.hpp"

using namespace nemesis;
using testing::max_diff;
using testing::random_slots;

namespace {

struct Fixture {
  Context ctx{default_params()};
  Rng rng{555};
  KeyPair keys = keygen(ctx, rng);
  std::size_t d = ctx.slot_count();
  double sigma = ctx.params().randomization_sigma;

  CacheEntry make(const SelectionPolicy& policy, const SlotVector& candidates = SlotVector()) {
    return precompute(ctx, candidates, policy, keys.public_key, rng);
  }
  SlotVector dec(const Ciphertext& ct, std::size_t n) { return decrypt_values(ctx, keys.secret, ct, n); }
  SlotVector b124() const {
    SlotVector b(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) b[static_cast<Eigen::Index>(i)] = static_cast<double>(1u << (i % 3));
    return b;
  }
};

std::vector<u64> flat(const Ciphertext& ct) {
  std::vector<u64> out(ct.c0().values().begin(), ct.c0().values().end());
  out.insert(out.end(), ct.c1().values().begin(), ct.c1().values().end());
  return out;
}

}  // namespace

TEST_CASE("selection policies") {
  CHECK(SelectionPolicy::all_ones(4).select(SlotVector()) == SlotVector::Ones(4));
  SlotVector fixed(3);
  fixed << 1, 2, 4;
  CHECK(SelectionPolicy::fixed(fixed).select(SlotVector()) == fixed);
  SlotVector with_zero(2);
  with_zero << 1, 0;
  CHECK_THROWS_AS(SelectionPolicy::fixed(with_zero).select(SlotVector()), CacheError);
  CHECK_THROWS_AS(SelectionPolicy::all_ones(0).select(SlotVector()), CacheError);

  SlotVector candidates(9);
  candidates << 0.5, 0.25, 0.5, 0, 0, 0, 0.25, 0.5, 2;
  const SlotVector top = SelectionPolicy::frequency_top_k(4).select(candidates);
  SlotVector expected(4);
  expected << 0.5, 0.25, 2, 0.5;  // counts 3, 2, 1; zeros skipped; ranking repeats
  CHECK(top == expected);
  const SlotVector from_hist = SelectionPolicy::frequency_top_k(2, {{3.0, 1}, {-1.0, 7}}).select(SlotVector());
  CHECK(from_hist[0] == -1.0);
  CHECK(from_hist[1] == 3.0);
  CHECK_THROWS_AS(SelectionPolicy::frequency_top_k(2).select(SlotVector::Zero(5)), CacheError);
}

TEST_CASE("precompute builds a decryptable base") {
  Fixture f;
  const CacheEntry ones = f.make(SelectionPolicy::all_ones(f.d));
  CHECK(ones.dimension() == f.d);
  CHECK(ones.base_ciphertext().depth() == 0);
  CHECK(ones.base_ciphertext().scale() == f.ctx.scale());
  CHECK(max_diff(f.dec(ones.base_ciphertext(), f.d), SlotVector::Ones(static_cast<Eigen::Index>(f.d))) <=
        tolerances::kFresh);
  CHECK(ones.creation_ops().encryptions == 1);
  CHECK(ones.creation_ops().precomputes == 1);
  CHECK(ones.creation_seconds() > 0);

  const CacheEntry twos = f.make(SelectionPolicy::fixed(SlotVector::Constant(static_cast<Eigen::Index>(f.d), 2.0)));
  CHECK(max_diff(f.dec(twos.base_ciphertext(), f.d), SlotVector::Constant(static_cast<Eigen::Index>(f.d), 2.0)) <=
        tolerances::kFresh);

  SlotVector bad = SlotVector::Ones(static_cast<Eigen::Index>(f.d));
  bad[7] = 0;
  CHECK_THROWS_AS(f.make(SelectionPolicy::fixed(bad)), CacheError);
  CHECK_THROWS_AS(f.make(SelectionPolicy::all_ones(f.d + 1)), CacheError);
}

TEST_CASE("reconstruction") {
  Fixture f;
  const CacheEntry ones = f.make(SelectionPolicy::all_ones(f.d));
  const CacheEntry fixed = f.make(SelectionPolicy::fixed(f.b124()));
  CounterScope scope;
  for (int t = 0; t < 20; ++t) {
    const SlotVector m = random_slots(f.rng, f.d);
    for (const CacheEntry* cache : {&ones, &fixed}) {
      const Ciphertext ct = reconstruct(f.ctx, *cache, m);
      CHECK(ct.depth() == 1);
      CHECK(ct.scale() == f.ctx.scale() * f.ctx.scale());
      CHECK(max_diff(f.dec(ct, f.d), m) <= tolerances::kMult);
    }
  }
  const OpCounters ops = scope.delta();
  CHECK(ops.public_key_muls == 0);
  CHECK(ops.encryptions == 0);
  CHECK(ops.ternary_samples == 0);
  CHECK(ops.gaussian_samples == 0);

  CHECK(max_diff(f.dec(reconstruct(f.ctx, fixed, fixed.base_slots()), f.d), fixed.base_slots()) <= tolerances::kMult);
  CHECK(f.dec(reconstruct(f.ctx, ones, SlotVector::Zero(static_cast<Eigen::Index>(f.d))), f.d).cwiseAbs().maxCoeff() <=
        tolerances::kMult);
  const SlotVector short_m = random_slots(f.rng, 5);
  CHECK(max_diff(f.dec(reconstruct(f.ctx, ones, short_m), 5), short_m) <= tolerances::kMult);

  CHECK_THROWS_AS(reconstruct(f.ctx, ones, SlotVector::Zero(static_cast<Eigen::Index>(f.d + 1))), ParameterError);
  const CacheEntry quarter = f.make(SelectionPolicy::fixed(SlotVector::Constant(4, 0.25)));
  CHECK_THROWS_AS(reconstruct(f.ctx, quarter, SlotVector::Constant(4, 20.0)), RangeError);
  CHECK_THROWS_AS(reconstruct(f.ctx, quarter, SlotVector::Zero(5)), ParameterError);
  const Context small(params_with_degree(16));
  CHECK_THROWS_AS(reconstruct(small, ones, SlotVector::Zero(4)), ParameterError);
}

TEST_CASE("randomization") {
  Fixture f;
  const CacheEntry ones = f.make(SelectionPolicy::all_ones(f.d));
  const SlotVector m = random_slots(f.rng, f.d);
  const Ciphertext target = reconstruct(f.ctx, ones, m);
  const SlotVector base = f.dec(target, f.d);
  CounterScope scope;
  const Ciphertext r1 = randomize(f.ctx, target, f.sigma, f.rng);
  CHECK(scope.delta().gaussian_samples == f.ctx.degree());
  CHECK(scope.delta().ternary_samples == 0);
  const Ciphertext r2 = randomize(f.ctx, target, f.sigma, f.rng);
  CHECK_FALSE(r1.c0() == r2.c0());
  CHECK_FALSE(r1.c0() == target.c0());
  CHECK(r1.c1() == target.c1());
  double worst = 0;
  for (int t = 0; t < 1000; ++t) {
    worst = std::max(worst, max_diff(f.dec(randomize(f.ctx, target, f.sigma, f.rng), f.d), base));
  }
  CHECK(worst <= tolerances::kRand);
  CHECK(max_diff(f.dec(r1, f.d), m) <= tolerances::kMult + tolerances::kRand);
  CHECK_THROWS_AS(randomize(f.ctx, target, 0.0, f.rng), ParameterError);
  CHECK_THROWS_AS(nemesis_encrypt(f.ctx, ones, m, -1.0, f.rng), ParameterError);
}

TEST_CASE("nemesis_encrypt: determinism, distinctness, correctness") {
  Fixture f;
  const CacheEntry ones = f.make(SelectionPolicy::all_ones(f.d));
  const CacheEntry fixed = f.make(SelectionPolicy::fixed(f.b124()));
  const SlotVector m = random_slots(f.rng, f.d);
  Rng a(8);
  Rng b(8);
  CHECK(nemesis_encrypt(f.ctx, ones, m, f.sigma, a) == nemesis_encrypt(f.ctx, ones, m, f.sigma, b));

  std::set<std::vector<u64>> seen;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng = Rng::derive(seed, 0);
    seen.insert(flat(nemesis_encrypt(f.ctx, ones, m, f.sigma, rng)));
  }
  CHECK(seen.size() == 100);

  for (int t = 0; t < 50; ++t) {
    const SlotVector x = random_slots(f.rng, f.d);
    CHECK(max_diff(f.dec(nemesis_encrypt(f.ctx, ones, x, f.sigma, f.rng), f.d), x) <=
          tolerances::kMult + tolerances::kRand);
    CHECK(max_diff(f.dec(nemesis_encrypt(f.ctx, fixed, x, f.sigma, f.rng), f.d), x) <=
          tolerances::kMult + tolerances::kRand);
  }
}

TEST_CASE("per-batch cost: cached path against a fresh encryption") {
  Fixture f;
  const CacheEntry ones = f.make(SelectionPolicy::all_ones(f.d));
  const SlotVector m = random_slots(f.rng, f.d);
  CounterScope nemesis_scope;
  nemesis_encrypt(f.ctx, ones, m, f.sigma, f.rng);
  const OpCounters cached = nemesis_scope.delta();
  CounterScope fresh_scope;
  encrypt(f.ctx, f.keys.public_key, encode_fast(f.ctx, m), f.rng);
  const OpCounters fresh = fresh_scope.delta();
  CHECK(cached.public_key_muls == 0);
  CHECK(fresh.public_key_muls == 2);
  CHECK(cached.ternary_samples == 0);
  CHECK(fresh.ternary_samples == 1);
  CHECK(cached.gaussian_samples == f.ctx.degree());
  CHECK(fresh.gaussian_samples == 2 * f.ctx.degree());
  CHECK(cached.encryptions == 0);
  CHECK(fresh.encryptions == 1);
  CHECK(cached.precomputes == 0);
}

TEST_CASE("chunking") {
  CHECK(chunk_count(582026, 2048) == 285);
  CHECK(chunk_count(878538, 2048) == 429);
  CHECK(chunk_count(5, 2048) == 1);
  CHECK(chunk_count(0, 2048) == 0);
  CHECK(chunk_count(2049, 2048) == 2);
  CHECK_THROWS_AS(chunk_count(5, 0), ParameterError);
  const std::vector<double> w{1, 2, 3, 4, 5};
  CHECK(chunk_of(w, 2, 2).size() == 1);
  CHECK(chunk_of(w, 2, 2)[0] == 5);
  CHECK_THROWS_AS(chunk_of(w, 2, 3), ParameterError);

  Fixture f;
  CounterScope scope;
  const CacheEntry ones = f.make(SelectionPolicy::all_ones(f.d));
  std::vector<double> weights(5);
  for (std::size_t i = 0; i < weights.size(); ++i) weights[i] = 0.1 * static_cast<double>(i) - 0.2;
  const auto cts = chunk_and_encrypt(f.ctx, ones, weights, 2048, f.sigma, f.rng);
  REQUIRE(cts.size() == 1);
  const SlotVector got = f.dec(cts[0], 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(got[static_cast<Eigen::Index>(i)] - weights[i]) <= tolerances::kMult + tolerances::kRand);

  std::vector<double> many(10000);
  for (std::size_t i = 0; i < many.size(); ++i) many[i] = std::sin(static_cast<double>(i));
  const auto chunks = chunk_and_encrypt(f.ctx, ones, many, 512, f.sigma, f.rng);
  CHECK(chunks.size() == 20);
  double worst = 0;
  for (std::size_t c = 0; c < chunks.size(); ++c) {
    const SlotVector expect = chunk_of(many, 512, c);
    worst = std::max(worst, max_diff(f.dec(chunks[c], static_cast<std::size_t>(expect.size())), expect));
  }
  CHECK(worst <= tolerances::kMult + tolerances::kRand);
  CHECK(scope.delta().precomputes == 1);
  CHECK(scope.delta().encryptions == 1);

  CHECK_THROWS_AS(chunk_and_encrypt(f.ctx, ones, many, 0, f.sigma, f.rng), ParameterError);
  CHECK_THROWS_AS(chunk_and_encrypt(f.ctx, ones, many, f.d + 1, f.sigma, f.rng), ParameterError);
  const CacheEntry narrow = f.make(SelectionPolicy::all_ones(16));
  CHECK_THROWS_AS(chunk_and_encrypt(f.ctx, narrow, many, 32, f.sigma, f.rng), ParameterError);
}

TEST_CASE("frequency policy end to end") {
  Fixture f;
  SlotVector candidates = random_slots(f.rng, 50000);
  candidates = candidates.unaryExpr([](double v) { return std::round(v * 8) / 8; });
  const CacheEntry freq = f.make(SelectionPolicy::frequency_top_k(f.d), candidates);
  CHECK((freq.base_slots().array() != 0).all());
  CHECK(std::abs(freq.base_slots().maxCoeff()) <= 1.0);
  const SlotVector m = random_slots(f.rng, f.d, 0.1);
  CHECK(max_diff(f.dec(nemesis_encrypt(f.ctx, freq, m, f.sigma, f.rng), f.d), m) <= 8 * tolerances::kMult);
}

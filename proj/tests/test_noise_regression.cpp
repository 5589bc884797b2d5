// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "nemesis/cache.hpp"
#include "support.hpp"
#include "tolerances.hpp"

using namespace nemesis;

TEST_CASE("noise budget after encrypt, multiply, randomize and a 20-way sum") {
  const Context ctx(default_params());
  Rng rng(31337);
  const KeyPair keys = keygen(ctx, rng);
  const CacheEntry cache =
      precompute(ctx, SlotVector(), SelectionPolicy::all_ones(ctx.slot_count()), keys.public_key, rng);
  const double sigma = ctx.params().randomization_sigma;
  double worst = 0;
  for (int t = 0; t < 10000; ++t) {
    const SlotVector m = testing::random_slots(rng, ctx.slot_count());
    Ciphertext sum = nemesis_encrypt(ctx, cache, m, sigma, rng);
    for (int k = 1; k < 20; ++k) sum = add_ct_ct(sum, nemesis_encrypt(ctx, cache, m, sigma, rng));
    worst = std::max(worst, testing::max_diff(decrypt_values(ctx, keys.secret, sum, ctx.slot_count()), 20.0 * m));
  }
  MESSAGE("max error over 1e4 trials " << worst);
  CHECK(worst <= tolerances::kNoiseRegression);
}

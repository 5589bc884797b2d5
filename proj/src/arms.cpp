// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#include "nemesis/arms.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "nemesis/errors.hpp"

namespace nemesis {

std::string_view arm_name(Arm arm) {
  switch (arm) {
    case Arm::kNaive:
      return "naive";
    case Arm::kBatch:
      return "batch";
    case Arm::kNemesis:
      return "nemesis";
    case Arm::kRachePlus:
      return "rache+";
  }
  return "unknown";
}

Arm parse_arm(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  for (Arm arm : kAllArms) {
    if (lower == arm_name(arm)) return arm;
  }
  if (lower == "rache" || lower == "rache-plus" || lower == "racheplus") return Arm::kRachePlus;
  throw ConfigError("unknown encryptor arm '" + std::string(name) + "'");
}

int arm_depth(Arm arm) { return arm == Arm::kNemesis ? 1 : 0; }

bool arm_is_scalar(Arm arm) { return arm == Arm::kNaive || arm == Arm::kRachePlus; }

std::size_t arm_unit_width(Arm arm, std::size_t batch_size) { return arm_is_scalar(arm) ? 1 : batch_size; }

ArmResources prepare_arm(const Context& ctx, const PublicKey& pk, Arm arm, const ArmOptions& options, Rng& rng) {
  ArmResources res;
  res.arm = arm;
  res.batch_size = options.batch_size;
  res.sigma_rand = options.sigma_rand;
  if (!arm_is_scalar(arm)) check_batch_size(options.batch_size, ctx.slot_count());
  switch (arm) {
    case Arm::kNemesis: {
      if (!(options.sigma_rand > 0)) throw ConfigError("randomization sigma must be positive");
      const SelectionPolicy policy = options.policy.value_or(SelectionPolicy::all_ones(ctx.slot_count()));
      res.cache.emplace(precompute(ctx, options.candidates, policy, pk, rng));
      if (res.cache->dimension() < options.batch_size) throw ConfigError("cache dimension below batch size");
      break;
    }
    case Arm::kRachePlus:
      res.radix.emplace(rache_precompute(ctx, pk, options.radix, rng));
      break;
    case Arm::kNaive:
    case Arm::kBatch:
      break;
  }
  return res;
}

Ciphertext encrypt_unit(const Context& ctx, const PublicKey& pk, const ArmResources& res, const SlotVector& m,
                        Rng& rng) {
  if (static_cast<std::size_t>(m.size()) > arm_unit_width(res.arm, res.batch_size)) {
    throw ParameterError("unit exceeds the arm's width");
  }
  switch (res.arm) {
    case Arm::kNaive:
    case Arm::kBatch:
      return encrypt(ctx, pk, encode_fast(ctx, m), rng);
    case Arm::kNemesis:
      return nemesis_encrypt(ctx, *res.cache, m, res.sigma_rand, rng);
    case Arm::kRachePlus:
      return rache_encrypt_scalar(ctx, *res.radix, m.size() == 0 ? 0.0 : m[0], rng);
  }
  throw ConfigError("unknown encryptor arm");
}

}  // namespace nemesis

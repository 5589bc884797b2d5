// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string_view>

#include "nemesis/baselines.hpp"
#include "nemesis/cache.hpp"

namespace nemesis {

/// Batch encryptors under comparison.
enum class Arm { kNaive, kBatch, kNemesis, kRachePlus };

inline constexpr Arm kAllArms[] = {Arm::kNemesis, Arm::kBatch, Arm::kRachePlus, Arm::kNaive};

std::string_view arm_name(Arm arm);
/// Accepts the names returned by arm_name, case-insensitively. Throws ConfigError.
Arm parse_arm(std::string_view name);

/// Depth of the ciphertexts an arm produces.
int arm_depth(Arm arm);
/// Naive and Rache+ place one value per ciphertext.
bool arm_is_scalar(Arm arm);
/// Number of values carried by one ciphertext.
std::size_t arm_unit_width(Arm arm, std::size_t batch_size);

/// Per-arm precomputed state shared by every client of the arm.
struct ArmResources {
  Arm arm = Arm::kBatch;
  std::size_t batch_size = 0;
  double sigma_rand = 3.2;
  std::optional<CacheEntry> cache;
  std::optional<RadixCache> radix;
};

struct ArmOptions {
  std::size_t batch_size = 2048;
  double sigma_rand = 3.2;
  RadixOptions radix;
  /// Defaults to all_ones(N/2).
  std::optional<SelectionPolicy> policy;
  /// Candidates handed to the selection policy.
  SlotVector candidates;
};

ArmResources prepare_arm(const Context& ctx, const PublicKey& pk, Arm arm, const ArmOptions& options, Rng& rng);

/// Encrypts one unit (at most arm_unit_width values) with the arm.
Ciphertext encrypt_unit(const Context& ctx, const PublicKey& pk, const ArmResources& res, const SlotVector& m,
                        Rng& rng);

}  // namespace nemesis

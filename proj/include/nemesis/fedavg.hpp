// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

// In-process federated averaging: clients encrypt their weight vectors with
// one of the arms, the server sums ciphertexts unit by unit, and the sum is
// decrypted and compared against the plaintext mean.

#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "nemesis/arms.hpp"
#include "nemesis/counters.hpp"

namespace nemesis {

/// NEMW file: "NEMW", version u8, count u64, count f64 (all little-endian).
void save_weights(const std::filesystem::path& path, std::span<const double> weights);
std::vector<double> load_weights(const std::filesystem::path& path);

enum class WeightDistribution { kUniform, kGaussian };

/// Uniform in [-1, 1], or gaussian(0, 0.1) clipped to [-1, 1].
std::vector<double> synth_weights(std::size_t model_size, std::uint64_t seed,
                                  WeightDistribution distribution = WeightDistribution::kUniform);

struct ClientUpdate {
  std::size_t client_id = 0;
  std::vector<double> weights;
};

struct RoundConfig {
  std::size_t num_clients = 20;
  std::size_t num_rounds = 10;
  std::size_t model_size = 582026;
  std::size_t batch_size = 2048;
  Arm encryptor = Arm::kNemesis;
  /// Per-client arm override; empty means every client uses `encryptor`.
  std::vector<Arm> client_arms;
  /// Multiply the sum by encode(1/n) before decryption. Depth-0 arms only.
  bool mean_before_decrypt = false;
  /// Example counts for a weighted mean; empty means uniform.
  std::vector<double> client_example_counts;
  bool parallel_clients = false;
  /// Keep the summed ciphertexts in the result.
  bool retain_ciphertexts = true;
  double sigma_rand = 3.2;
  RadixOptions radix;

  /// Throws ConfigError.
  void validate() const;
  Arm arm_of(std::size_t client) const;
};

struct RoundTiming {
  double encrypt_s = 0;
  double aggregate_s = 0;
  double decrypt_s = 0;
  double total_s = 0;
};

struct RoundResult {
  std::vector<Ciphertext> encrypted_sum;
  std::vector<double> decrypted_mean;
  std::vector<double> plaintext_mean;
  RoundTiming timing;
  OpCounters ops;

  double max_abs_error() const;
};

/// Precomputed state for every arm the config uses.
struct RoundResources {
  std::vector<ArmResources> arms;
  const ArmResources& for_arm(Arm arm) const;
};

RoundResources prepare_round(const Context& ctx, const PublicKey& pk, const RoundConfig& config, Rng& rng);

/// Throws ConfigError on a client count or length mismatch, or when the
/// configured arms produce ciphertexts of different depth or layout.
RoundResult aggregate_round(const Context& ctx, const RoundConfig& config, std::span<const ClientUpdate> updates,
                            const KeyPair& keys, const RoundResources& resources, Rng& rng);

/// Element-wise (weighted) mean in plain arithmetic.
std::vector<double> plaintext_fedavg(std::span<const ClientUpdate> updates, std::span<const double> example_counts);

}  // namespace nemesis

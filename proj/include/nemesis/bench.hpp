// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "nemesis/arms.hpp"
#include "nemesis/counters.hpp"

namespace nemesis {

struct BenchConfig {
  SchemeParams params = default_params();
  std::vector<Arm> arms{std::begin(kAllArms), std::end(kAllArms)};
  std::size_t model_size = 582026;
  /// Client weight vectors in the workload; all go through one cache.
  std::size_t clients = 1;
  std::vector<std::size_t> batch_sizes{2048};
  std::size_t repeats = 3;
  std::uint64_t seed = 1;
  double sigma_rand = 3.2;
  RadixOptions radix;
  /// all-ones, fixed or freq.
  std::string policy = "all-ones";

  /// Throws ConfigError.
  void validate() const;
};

/// One timed pass of one arm over the whole weight vector.
struct BenchResult {
  std::string arm;
  std::size_t ring_degree = 0;
  unsigned q_bits = 0;
  unsigned delta_log2 = 0;
  std::size_t batch_size = 0;
  std::size_t total_values = 0;
  std::size_t repeat = 0;
  std::uint64_t seed = 0;
  double t_precompute_s = 0;
  double t_reconstruct_s = 0;  // encode + encrypt for the baselines
  double t_randomize_s = 0;
  double t_total_s = 0;
  std::uint64_t n_encrypts = 0;
  std::uint64_t n_ring_muls = 0;
  std::uint64_t n_ntts = 0;
  std::uint64_t n_gaussian_samples = 0;
  std::uint64_t n_ternary_samples = 0;

  /// Counters of the one-time precomputation; not part of the CSV.
  OpCounters precompute_ops;
  /// Ciphertexts produced.
  std::size_t ciphertexts = 0;
  /// Max decryption error of the first ciphertext, measured outside the timed regions.
  double spot_check_error = 0;

  bool operator==(const BenchResult& o) const;
};

struct ArmSummary {
  std::string arm;
  std::size_t batch_size = 0;
  double median_total_s = 0;
  double mean_total_s = 0;
};

struct StageShare {
  std::size_t batch_size = 0;
  double precompute_pct = 0;
  double reconstruct_pct = 0;
  double randomize_pct = 0;
};

/// Encrypts `weights` once with `arm` and records stage times and counters.
BenchResult bench_arm(const Context& ctx, const KeyPair& keys, Arm arm, std::span<const double> weights,
                      std::size_t batch_size, const BenchConfig& config, std::size_t repeat, Rng& rng);

/// Every arm over one synthetic weight vector, `repeats` times, arms interleaved per repeat.
std::vector<BenchResult> run_arm_comparison(const BenchConfig& config);
std::vector<BenchResult> run_arm_comparison(const BenchConfig& config, const Context& ctx, const KeyPair& keys,
                                            std::span<const double> weights);

/// The Nemesis arm at every configured batch size.
std::vector<BenchResult> run_stage_profile(const BenchConfig& config);
std::vector<BenchResult> run_stage_profile(const BenchConfig& config, const Context& ctx, const KeyPair& keys,
                                           std::span<const double> weights);

/// Concatenation of `clients` synthetic weight vectors of model_size values.
std::vector<double> workload_weights(const BenchConfig& config);

/// Median and mean total time per (arm, batch size), in first-seen order.
std::vector<ArmSummary> summarize(const std::vector<BenchResult>& results);
/// Percentage of each stage in the mean Nemesis time, per batch size.
std::vector<StageShare> stage_shares(const std::vector<BenchResult>& results);

double median(std::vector<double> values);

enum class OutputFormat { kCsv, kJson };
OutputFormat parse_format(std::string_view name);

const std::vector<std::string>& result_columns();
void write_csv(std::ostream& os, const std::vector<BenchResult>& results);
void write_json(std::ostream& os, const std::vector<BenchResult>& results);
/// Throws IoError when the path cannot be written.
void emit_results(const std::vector<BenchResult>& results, OutputFormat format, const std::filesystem::path& path);
/// Parses output of write_csv. Throws FormatError.
std::vector<BenchResult> read_csv(std::istream& is);

}  // namespace nemesis

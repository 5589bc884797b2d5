// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#include "nemesis/fedavg.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <numeric>
#include <random>
#include <string>

#include "nemesis/errors.hpp"

namespace nemesis {
namespace {

constexpr char kWeightsMagic[4] = {'N', 'E', 'M', 'W'};
constexpr std::uint8_t kWeightsVersion = 1;
// Units encrypted per client before the server folds them into the sum.
constexpr std::size_t kMaxUnitsPerBlock = 32;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void put_u64(std::ostream& os, std::uint64_t v) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(bytes, 8);
}

std::uint64_t get_u64(std::istream& is) {
  unsigned char bytes[8];
  if (!is.read(reinterpret_cast<char*>(bytes), 8)) throw FormatError("truncated weight file");
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | bytes[i];
  return v;
}

struct BlockOutput {
  std::vector<Ciphertext> units;
  OpCounters ops;
};

}  // namespace

void save_weights(const std::filesystem::path& path, std::span<const double> weights) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os.write(kWeightsMagic, 4);
  os.put(static_cast<char>(kWeightsVersion));
  put_u64(os, weights.size());
  for (double w : weights) put_u64(os, std::bit_cast<std::uint64_t>(w));
  os.flush();
  if (!os) throw IoError("write to " + path.string() + " failed");
}

std::vector<double> load_weights(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  char magic[4];
  if (!is.read(magic, 4)) throw FormatError("truncated weight file");
  if (!std::equal(magic, magic + 4, kWeightsMagic)) throw FormatError("bad weight file magic");
  const int version = is.get();
  if (version == std::char_traits<char>::eof()) throw FormatError("truncated weight file");
  if (version != kWeightsVersion) throw FormatError("unsupported weight file version " + std::to_string(version));
  const std::uint64_t count = get_u64(is);
  const auto start = is.tellg();
  is.seekg(0, std::ios::end);
  const auto available = static_cast<std::uint64_t>(is.tellg() - start);
  is.seekg(start);
  if (available / 8 < count) throw FormatError("truncated weight file");
  if (available != count * 8) throw FormatError("trailing bytes in weight file");
  std::vector<double> out(count);
  for (auto& w : out) w = std::bit_cast<double>(get_u64(is));
  return out;
}

std::vector<double> synth_weights(std::size_t model_size, std::uint64_t seed, WeightDistribution distribution) {
  if (model_size == 0) throw ConfigError("model size must be positive");
  std::mt19937_64 engine(seed);
  std::vector<double> out(model_size);
  if (distribution == WeightDistribution::kUniform) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (auto& w : out) w = dist(engine);
  } else {
    std::normal_distribution<double> dist(0.0, 0.1);
    for (auto& w : out) w = std::clamp(dist(engine), -1.0, 1.0);
  }
  return out;
}

void RoundConfig::validate() const {
  if (num_clients < 1) throw ConfigError("num_clients must be at least 1");
  if (num_rounds < 1) throw ConfigError("num_rounds must be at least 1");
  if (model_size < 1) throw ConfigError("model_size must be at least 1");
  if (batch_size < 1) throw ConfigError("batch_size must be at least 1");
  if (!(sigma_rand > 0)) throw ConfigError("sigma_rand must be positive");
  if (!client_arms.empty() && client_arms.size() != num_clients) {
    throw ConfigError("client_arms must list one arm per client");
  }
  if (!client_example_counts.empty()) {
    if (client_example_counts.size() != num_clients) {
      throw ConfigError("client_example_counts must list one count per client");
    }
    for (double n : client_example_counts) {
      if (!(n > 0) || !std::isfinite(n)) throw ConfigError("example counts must be positive");
    }
  }
  const Arm first = arm_of(0);
  for (std::size_t k = 1; k < num_clients; ++k) {
    const Arm arm = arm_of(k);
    if (arm_depth(arm) != arm_depth(first)) {
      throw ConfigError("arms " + std::string(arm_name(first)) + " and " + std::string(arm_name(arm)) +
                        " produce ciphertexts of different depth and scale");
    }
    if (arm_is_scalar(arm) != arm_is_scalar(first)) {
      throw ConfigError("arms " + std::string(arm_name(first)) + " and " + std::string(arm_name(arm)) +
                        " pack values differently");
    }
  }
  if (mean_before_decrypt && arm_depth(first) != 0) {
    throw ConfigError("mean_before_decrypt needs depth-0 ciphertexts; " + std::string(arm_name(first)) +
                      " has no multiplication left");
  }
}

Arm RoundConfig::arm_of(std::size_t client) const {
  return client_arms.empty() ? encryptor : client_arms.at(client);
}

double RoundResult::max_abs_error() const {
  double worst = 0;
  for (std::size_t i = 0; i < decrypted_mean.size() && i < plaintext_mean.size(); ++i) {
    worst = std::max(worst, std::abs(decrypted_mean[i] - plaintext_mean[i]));
  }
  return worst;
}

const ArmResources& RoundResources::for_arm(Arm arm) const {
  for (const auto& res : arms) {
    if (res.arm == arm) return res;
  }
  throw ConfigError("no resources prepared for arm " + std::string(arm_name(arm)));
}

RoundResources prepare_round(const Context& ctx, const PublicKey& pk, const RoundConfig& config, Rng& rng) {
  config.validate();
  RoundResources out;
  ArmOptions options;
  options.batch_size = config.batch_size;
  options.sigma_rand = config.sigma_rand;
  options.radix = config.radix;
  for (std::size_t k = 0; k < config.num_clients; ++k) {
    const Arm arm = config.arm_of(k);
    const bool present = std::any_of(out.arms.begin(), out.arms.end(), [arm](const auto& r) { return r.arm == arm; });
    if (!present) out.arms.push_back(prepare_arm(ctx, pk, arm, options, rng));
  }
  return out;
}

std::vector<double> plaintext_fedavg(std::span<const ClientUpdate> updates, std::span<const double> example_counts) {
  if (updates.empty()) return {};
  const std::size_t len = updates.front().weights.size();
  std::vector<double> coeff(updates.size(), 1.0 / static_cast<double>(updates.size()));
  if (!example_counts.empty()) {
    const double total = std::accumulate(example_counts.begin(), example_counts.end(), 0.0);
    for (std::size_t k = 0; k < updates.size(); ++k) coeff[k] = example_counts[k] / total;
  }
  std::vector<double> mean(len, 0.0);
  for (std::size_t k = 0; k < updates.size(); ++k) {
    if (updates[k].weights.size() != len) throw ConfigError("client weight lengths differ");
    for (std::size_t i = 0; i < len; ++i) mean[i] += coeff[k] * updates[k].weights[i];
  }
  return mean;
}

RoundResult aggregate_round(const Context& ctx, const RoundConfig& config, std::span<const ClientUpdate> updates,
                            const KeyPair& keys, const RoundResources& resources, Rng& rng) {
  const auto round_start = Clock::now();
  config.validate();
  if (updates.size() != config.num_clients) {
    throw ConfigError("expected " + std::to_string(config.num_clients) + " client updates, got " +
                      std::to_string(updates.size()));
  }
  const std::size_t len = updates.front().weights.size();
  for (const auto& u : updates) {
    if (u.weights.size() != len) throw ConfigError("client weight lengths differ");
  }
  if (len == 0) throw ConfigError("client weights are empty");
  CounterScope scope;
  OpCounters worker_ops;

  const std::size_t clients = updates.size();
  const Arm layout_arm = config.arm_of(0);
  const std::size_t width = arm_unit_width(layout_arm, config.batch_size);
  if (!arm_is_scalar(layout_arm)) check_batch_size(width, ctx.slot_count());
  const std::size_t units = chunk_count(len, width);
  const std::size_t block = std::clamp<std::size_t>(ctx.slot_count() / width, 1, kMaxUnitsPerBlock);

  // Client k submits alpha_k * w_k; the server divides the sum by `divisor`.
  std::vector<double> alpha(clients, 1.0);
  double divisor = static_cast<double>(clients);
  if (!config.client_example_counts.empty()) {
    const double total =
        std::accumulate(config.client_example_counts.begin(), config.client_example_counts.end(), 0.0);
    for (std::size_t k = 0; k < clients; ++k) alpha[k] = config.client_example_counts[k] / total;
    divisor = 1.0;
  }
  std::vector<std::vector<double>> submitted;
  if (!config.client_example_counts.empty()) {
    submitted.resize(clients);
    for (std::size_t k = 0; k < clients; ++k) {
      submitted[k] = updates[k].weights;
      for (double& w : submitted[k]) w *= alpha[k];
    }
  }
  auto client_weights = [&](std::size_t k) -> std::span<const double> {
    return submitted.empty() ? std::span<const double>(updates[k].weights) : std::span<const double>(submitted[k]);
  };

  std::vector<Rng> client_rngs;
  client_rngs.reserve(clients);
  const std::uint64_t round_seed = rng.next_u64();
  for (std::size_t k = 0; k < clients; ++k) client_rngs.push_back(Rng::derive(round_seed, updates[k].client_id));

  std::optional<Plaintext> mean_factor;
  const bool scale_before_decrypt = config.mean_before_decrypt && divisor != 1.0;
  if (scale_before_decrypt) {
    mean_factor = encode_fast(ctx, SlotVector::Constant(static_cast<Eigen::Index>(width), 1.0 / divisor));
  }

  RoundResult result;
  result.decrypted_mean.resize(len);
  if (config.retain_ciphertexts) result.encrypted_sum.reserve(units);

  auto encrypt_block = [&](std::size_t k, std::size_t first, std::size_t count) {
    CounterScope local;
    BlockOutput out;
    out.units.reserve(count);
    const ArmResources& res = resources.for_arm(config.arm_of(k));
    for (std::size_t u = first; u < first + count; ++u) {
      out.units.push_back(encrypt_unit(ctx, keys.public_key, res, chunk_of(client_weights(k), width, u),
                                       client_rngs[k]));
    }
    out.ops = local.delta();
    return out;
  };

  std::vector<BlockOutput> outputs(clients);
  for (std::size_t first = 0; first < units; first += block) {
    const std::size_t count = std::min(block, units - first);

    auto t0 = Clock::now();
    if (config.parallel_clients && clients > 1) {
      std::vector<std::future<BlockOutput>> futures;
      futures.reserve(clients);
      for (std::size_t k = 0; k < clients; ++k) {
        futures.push_back(std::async(std::launch::async, encrypt_block, k, first, count));
      }
      for (std::size_t k = 0; k < clients; ++k) {
        outputs[k] = futures[k].get();
        worker_ops += outputs[k].ops;
      }
    } else {
      for (std::size_t k = 0; k < clients; ++k) outputs[k] = encrypt_block(k, first, count);
    }
    result.timing.encrypt_s += seconds_since(t0);

    for (std::size_t j = 0; j < count; ++j) {
      t0 = Clock::now();
      Ciphertext sum = std::move(outputs[0].units[j]);
      for (std::size_t k = 1; k < clients; ++k) sum = add_ct_ct(sum, outputs[k].units[j]);
      if (mean_factor) sum = mul_ct_pt(ctx, sum, *mean_factor);
      result.timing.aggregate_s += seconds_since(t0);

      t0 = Clock::now();
      const std::size_t u = first + j;
      const std::size_t begin = u * width;
      const std::size_t n = std::min(width, len - begin);
      const SlotVector values = decrypt_values(ctx, keys.secret, sum, n);
      const double post = scale_before_decrypt ? 1.0 : divisor;
      for (std::size_t i = 0; i < n; ++i) result.decrypted_mean[begin + i] = values[static_cast<Eigen::Index>(i)] / post;
      result.timing.decrypt_s += seconds_since(t0);

      if (config.retain_ciphertexts) result.encrypted_sum.push_back(std::move(sum));
    }
  }

  result.plaintext_mean = plaintext_fedavg(updates, config.client_example_counts);
  result.ops = scope.delta() + worker_ops;
  result.timing.total_s = seconds_since(round_start);
  return result;
}

}  // namespace nemesis

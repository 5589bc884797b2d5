// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#include "nemesis/bench.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include "json.hpp"
#include <ostream>
#include <sstream>

#include "nemesis/errors.hpp"
#include "nemesis/fedavg.hpp"

namespace nemesis {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Frequency candidates live on a coarse grid so every selected base value is
// at least 1/16 in magnitude.
constexpr double kFrequencyGrid = 16.0;

SelectionPolicy make_policy(const std::string& name, const Context& ctx, std::span<const double> weights,
                            SlotVector& candidates) {
  const std::size_t d = ctx.slot_count();
  if (name == "all-ones") return SelectionPolicy::all_ones(d);
  if (name == "fixed") {
    SlotVector values(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) values[static_cast<Eigen::Index>(i)] = static_cast<double>(1u << (i % 3));
    return SelectionPolicy::fixed(std::move(values));
  }
  if (name == "freq") {
    candidates.resize(static_cast<Eigen::Index>(weights.size()));
    for (std::size_t i = 0; i < weights.size(); ++i) {
      candidates[static_cast<Eigen::Index>(i)] = std::round(weights[i] * kFrequencyGrid) / kFrequencyGrid;
    }
    return SelectionPolicy::frequency_top_k(d);
  }
  throw ConfigError("unknown policy '" + name + "' (expected all-ones, fixed or freq)");
}

unsigned log2_exact(double x) { return static_cast<unsigned>(std::lround(std::log2(x))); }

double max_error(const SlotVector& got, std::span<const double> want) {
  double worst = 0;
  for (std::size_t i = 0; i < want.size(); ++i) {
    worst = std::max(worst, std::abs(got[static_cast<Eigen::Index>(i)] - want[i]));
  }
  return worst;
}

template <typename T>
T parse_number(const std::string& field) {
  std::istringstream in(field);
  T value{};
  in >> value;
  if (!in || in.peek() != std::char_traits<char>::eof()) throw FormatError("bad numeric field '" + field + "'");
  return value;
}

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

void BenchConfig::validate() const {
  params.validate();
  if (arms.empty()) throw ConfigError("no arms selected");
  if (model_size < 1) throw ConfigError("model size must be positive");
  if (clients < 1) throw ConfigError("clients must be positive");
  if (repeats < 1) throw ConfigError("repeats must be positive");
  if (batch_sizes.empty()) throw ConfigError("no batch sizes");
  for (std::size_t b : batch_sizes) {
    if (b < 1 || b > params.slot_count()) {
      throw ConfigError("batch size " + std::to_string(b) + " outside [1, " + std::to_string(params.slot_count()) +
                        "]");
    }
  }
  if (!(sigma_rand > 0)) throw ConfigError("sigma_rand must be positive");
  if (policy != "all-ones" && policy != "fixed" && policy != "freq") {
    throw ConfigError("unknown policy '" + policy + "'");
  }
}

bool BenchResult::operator==(const BenchResult& o) const {
  return arm == o.arm && ring_degree == o.ring_degree && q_bits == o.q_bits && delta_log2 == o.delta_log2 &&
         batch_size == o.batch_size && total_values == o.total_values && repeat == o.repeat && seed == o.seed &&
         t_precompute_s == o.t_precompute_s && t_reconstruct_s == o.t_reconstruct_s &&
         t_randomize_s == o.t_randomize_s && t_total_s == o.t_total_s && n_encrypts == o.n_encrypts &&
         n_ring_muls == o.n_ring_muls && n_ntts == o.n_ntts && n_gaussian_samples == o.n_gaussian_samples &&
         n_ternary_samples == o.n_ternary_samples;
}

BenchResult bench_arm(const Context& ctx, const KeyPair& keys, Arm arm, std::span<const double> weights,
                      std::size_t batch_size, const BenchConfig& config, std::size_t repeat, Rng& rng) {
  BenchResult r;
  r.arm = std::string(arm_name(arm));
  r.ring_degree = ctx.degree();
  r.q_bits = static_cast<unsigned>(std::bit_width(ctx.params().modulus));
  r.delta_log2 = log2_exact(ctx.scale());
  r.batch_size = batch_size;
  r.total_values = weights.size();
  r.repeat = repeat;
  r.seed = config.seed;

  ArmOptions options;
  options.batch_size = batch_size;
  options.sigma_rand = config.sigma_rand;
  options.radix = config.radix;
  if (arm == Arm::kNemesis) options.policy = make_policy(config.policy, ctx, weights, options.candidates);

  const auto start = Clock::now();
  ArmResources res;
  {
    CounterScope scope;
    res = prepare_arm(ctx, keys.public_key, arm, options, rng);
    r.precompute_ops = scope.delta();
  }
  r.t_precompute_s = seconds_since(start);

  const std::size_t width = arm_unit_width(arm, batch_size);
  const std::size_t units = chunk_count(weights.size(), width);
  std::optional<Ciphertext> first;
  CounterScope scope;
  for (std::size_t u = 0; u < units; ++u) {
    const SlotVector m = chunk_of(weights, width, u);
    auto t0 = Clock::now();
    Ciphertext ct = [&] {
      switch (arm) {
        case Arm::kNaive:
        case Arm::kBatch:
          return encrypt(ctx, keys.public_key, encode_fast(ctx, m), rng);
        case Arm::kNemesis:
          return reconstruct(ctx, *res.cache, m);
        case Arm::kRachePlus:
          return rache_encrypt_scalar(ctx, *res.radix, m[0], rng);
      }
      throw ConfigError("unknown arm");
    }();
    r.t_reconstruct_s += seconds_since(t0);
    if (arm == Arm::kNemesis) {
      t0 = Clock::now();
      ct = randomize(ctx, ct, config.sigma_rand, rng);
      r.t_randomize_s += seconds_since(t0);
    }
    if (u == 0) first.emplace(std::move(ct));
  }
  const OpCounters ops = scope.delta();
  r.t_total_s = seconds_since(start);
  r.ciphertexts = units;
  r.n_encrypts = ops.encryptions;
  r.n_ring_muls = ops.ring_muls;
  r.n_ntts = ops.ntts();
  r.n_gaussian_samples = ops.gaussian_samples;
  r.n_ternary_samples = ops.ternary_samples;

  const std::size_t n = std::min(width, weights.size());
  r.spot_check_error = max_error(decrypt_values(ctx, keys.secret, *first, n), weights.first(n));
  return r;
}

std::vector<BenchResult> run_arm_comparison(const BenchConfig& config, const Context& ctx, const KeyPair& keys,
                                            std::span<const double> weights) {
  config.validate();
  std::vector<BenchResult> out;
  for (std::size_t rep = 0; rep < config.repeats; ++rep) {
    for (std::size_t b : config.batch_sizes) {
      for (Arm arm : config.arms) {
        Rng rng = Rng::derive(config.seed, 1000 * rep + static_cast<std::uint64_t>(arm));
        out.push_back(bench_arm(ctx, keys, arm, weights, b, config, rep, rng));
      }
    }
  }
  return out;
}

std::vector<BenchResult> run_arm_comparison(const BenchConfig& config) {
  config.validate();
  const Context ctx(config.params);
  Rng key_rng = Rng::derive(config.seed, 0);
  const KeyPair keys = keygen(ctx, key_rng);
  const std::vector<double> weights = workload_weights(config);
  return run_arm_comparison(config, ctx, keys, weights);
}

std::vector<BenchResult> run_stage_profile(const BenchConfig& config, const Context& ctx, const KeyPair& keys,
                                           std::span<const double> weights) {
  BenchConfig nemesis_only = config;
  nemesis_only.arms = {Arm::kNemesis};
  return run_arm_comparison(nemesis_only, ctx, keys, weights);
}

std::vector<BenchResult> run_stage_profile(const BenchConfig& config) {
  BenchConfig nemesis_only = config;
  nemesis_only.arms = {Arm::kNemesis};
  return run_arm_comparison(nemesis_only);
}

std::vector<double> workload_weights(const BenchConfig& config) {
  std::vector<double> out;
  out.reserve(config.model_size * config.clients);
  for (std::size_t k = 0; k < config.clients; ++k) {
    const std::vector<double> w = synth_weights(config.model_size, config.seed + k);
    out.insert(out.end(), w.begin(), w.end());
  }
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<ArmSummary> summarize(const std::vector<BenchResult>& results) {
  std::vector<ArmSummary> out;
  std::vector<std::vector<double>> totals;
  for (const auto& r : results) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const ArmSummary& s) { return s.arm == r.arm && s.batch_size == r.batch_size; });
    if (it == out.end()) {
      out.push_back(ArmSummary{r.arm, r.batch_size, 0, 0});
      totals.emplace_back();
      it = out.end() - 1;
    }
    totals[static_cast<std::size_t>(it - out.begin())].push_back(r.t_total_s);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].median_total_s = median(totals[i]);
    double sum = 0;
    for (double t : totals[i]) sum += t;
    out[i].mean_total_s = sum / static_cast<double>(totals[i].size());
  }
  return out;
}

std::vector<StageShare> stage_shares(const std::vector<BenchResult>& results) {
  std::map<std::size_t, std::array<double, 3>> sums;
  std::vector<std::size_t> order;
  for (const auto& r : results) {
    if (r.arm != arm_name(Arm::kNemesis)) continue;
    if (!sums.contains(r.batch_size)) order.push_back(r.batch_size);
    auto& s = sums[r.batch_size];
    s[0] += r.t_precompute_s;
    s[1] += r.t_reconstruct_s;
    s[2] += r.t_randomize_s;
  }
  std::vector<StageShare> out;
  for (std::size_t b : order) {
    const auto& s = sums[b];
    const double total = s[0] + s[1] + s[2];
    if (total <= 0) {
      out.push_back(StageShare{b, 0, 0, 0});
      continue;
    }
    out.push_back(StageShare{b, 100 * s[0] / total, 100 * s[1] / total, 100 * s[2] / total});
  }
  return out;
}

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  throw ConfigError("unknown output format '" + std::string(name) + "'");
}

const std::vector<std::string>& result_columns() {
  static const std::vector<std::string> columns{
      "arm",           "N",               "q_bits",          "delta_log2",    "batch_size",
      "total_values",  "repeat",          "seed",            "t_precompute_s", "t_reconstruct_s",
      "t_randomize_s", "t_total_s",       "n_encrypts",      "n_ring_muls",   "n_ntts",
      "n_gaussian_samples", "n_ternary_samples"};
  return columns;
}

void write_csv(std::ostream& os, const std::vector<BenchResult>& results) {
  const auto& columns = result_columns();
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& r : results) {
    os << r.arm << ',' << r.ring_degree << ',' << r.q_bits << ',' << r.delta_log2 << ',' << r.batch_size << ','
       << r.total_values << ',' << r.repeat << ',' << r.seed << ',' << format_double(r.t_precompute_s) << ','
       << format_double(r.t_reconstruct_s) << ',' << format_double(r.t_randomize_s) << ','
       << format_double(r.t_total_s) << ',' << r.n_encrypts << ',' << r.n_ring_muls << ',' << r.n_ntts << ','
       << r.n_gaussian_samples << ',' << r.n_ternary_samples << '\n';
  }
}

void write_json(std::ostream& os, const std::vector<BenchResult>& results) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json row;
    row["arm"] = r.arm;
    row["N"] = r.ring_degree;
    row["q_bits"] = r.q_bits;
    row["delta_log2"] = r.delta_log2;
    row["batch_size"] = r.batch_size;
    row["total_values"] = r.total_values;
    row["repeat"] = r.repeat;
    row["seed"] = r.seed;
    row["t_precompute_s"] = r.t_precompute_s;
    row["t_reconstruct_s"] = r.t_reconstruct_s;
    row["t_randomize_s"] = r.t_randomize_s;
    row["t_total_s"] = r.t_total_s;
    row["n_encrypts"] = r.n_encrypts;
    row["n_ring_muls"] = r.n_ring_muls;
    row["n_ntts"] = r.n_ntts;
    row["n_gaussian_samples"] = r.n_gaussian_samples;
    row["n_ternary_samples"] = r.n_ternary_samples;
    rows.push_back(std::move(row));
  }
  os << rows.dump(2) << '\n';
}

void emit_results(const std::vector<BenchResult>& results, OutputFormat format, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  if (format == OutputFormat::kCsv) {
    write_csv(os, results);
  } else {
    write_json(os, results);
  }
  os.flush();
  if (!os) throw IoError("write to " + path.string() + " failed");
}

std::vector<BenchResult> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("missing CSV header");
  std::vector<std::string> header;
  {
    std::istringstream in(line);
    std::string field;
    while (std::getline(in, field, ',')) header.push_back(field);
  }
  if (header != result_columns()) throw FormatError("unexpected CSV header");
  std::vector<BenchResult> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::istringstream in(line);
    std::string field;
    while (std::getline(in, field, ',')) f.push_back(field);
    if (f.size() != header.size()) throw FormatError("CSV row has " + std::to_string(f.size()) + " fields");
    BenchResult r;
    r.arm = f[0];
    r.ring_degree = parse_number<std::size_t>(f[1]);
    r.q_bits = parse_number<unsigned>(f[2]);
    r.delta_log2 = parse_number<unsigned>(f[3]);
    r.batch_size = parse_number<std::size_t>(f[4]);
    r.total_values = parse_number<std::size_t>(f[5]);
    r.repeat = parse_number<std::size_t>(f[6]);
    r.seed = parse_number<std::uint64_t>(f[7]);
    r.t_precompute_s = parse_number<double>(f[8]);
    r.t_reconstruct_s = parse_number<double>(f[9]);
    r.t_randomize_s = parse_number<double>(f[10]);
    r.t_total_s = parse_number<double>(f[11]);
    r.n_encrypts = parse_number<std::uint64_t>(f[12]);
    r.n_ring_muls = parse_number<std::uint64_t>(f[13]);
    r.n_ntts = parse_number<std::uint64_t>(f[14]);
    r.n_gaussian_samples = parse_number<std::uint64_t>(f[15]);
    r.n_ternary_samples = parse_number<std::uint64_t>(f[16]);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace nemesis

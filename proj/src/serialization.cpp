// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#include "nemesis/serialization.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "nemesis/errors.hpp"

namespace nemesis {
namespace {

using Magic = std::array<char, 4>;
constexpr Magic kSecretKeyMagic{'N', 'M', 'S', 'K'};
constexpr Magic kPublicKeyMagic{'N', 'M', 'P', 'K'};
constexpr Magic kCiphertextMagic{'N', 'M', 'C', 'T'};
constexpr Magic kCacheMagic{'N', 'M', 'C', 'E'};

void put_u64(std::ostream& os, std::uint64_t v) {
  std::array<char, 8> bytes;
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(bytes.data(), bytes.size());
}

void put_f64(std::ostream& os, double v) { put_u64(os, std::bit_cast<std::uint64_t>(v)); }

void put_u8(std::ostream& os, std::uint8_t v) { os.put(static_cast<char>(v)); }

std::uint64_t get_u64(std::istream& is) {
  std::array<unsigned char, 8> bytes;
  if (!is.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) throw FormatError("truncated input");
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | bytes[i];
  return v;
}

double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

std::uint8_t get_u8(std::istream& is) {
  const int c = is.get();
  if (c == std::char_traits<char>::eof()) throw FormatError("truncated input");
  return static_cast<std::uint8_t>(c);
}

void put_header(std::ostream& os, const Magic& magic, const Context& ctx) {
  os.write(magic.data(), magic.size());
  put_u8(os, kFormatVersion);
  put_u64(os, ctx.degree());
  put_u64(os, ctx.params().modulus);
  put_f64(os, ctx.scale());
}

void expect_magic(std::istream& is, const Magic& magic) {
  Magic got;
  if (!is.read(got.data(), got.size())) throw FormatError("truncated input");
  if (got != magic) {
    throw FormatError("bad magic: expected " + std::string(magic.data(), 4) + ", got " + std::string(got.data(), 4));
  }
  const std::uint8_t version = get_u8(is);
  if (version != kFormatVersion) throw FormatError("unsupported format version " + std::to_string(version));
}

void expect_header(std::istream& is, const Magic& magic, const Context& ctx) {
  expect_magic(is, magic);
  const std::uint64_t n = get_u64(is);
  const std::uint64_t q = get_u64(is);
  const double scale = get_f64(is);
  if (n != ctx.degree() || q != ctx.params().modulus || scale != ctx.scale()) {
    throw FormatError("parameter header does not match the context");
  }
}

void put_element(std::ostream& os, const RingElement& x) {
  const RingElement coeffs = to_coefficient(x);
  for (u64 v : coeffs.values()) put_u64(os, v);
}

RingElement get_element(std::istream& is, const Context& ctx) {
  std::vector<u64> values(ctx.degree());
  for (auto& v : values) {
    v = get_u64(is);
    if (v >= ctx.params().modulus) throw FormatError("residue out of range");
  }
  return RingElement(ctx.ring(), std::move(values), Domain::kCoefficient);
}

void check_stream(std::ostream& os) {
  if (!os) throw IoError("write failed");
}

template <typename Fn>
void with_output(const std::filesystem::path& path, Fn&& fn) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  fn(os);
  os.flush();
  check_stream(os);
}

template <typename Fn>
auto with_input(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  return fn(is);
}

}  // namespace

void write_secret_key(std::ostream& os, const Context& ctx, const SecretKey& sk) {
  put_header(os, kSecretKeyMagic, ctx);
  put_element(os, sk.s);
  check_stream(os);
}

void write_public_key(std::ostream& os, const Context& ctx, const PublicKey& pk) {
  put_header(os, kPublicKeyMagic, ctx);
  put_element(os, pk.pk0);
  put_element(os, pk.pk1);
  check_stream(os);
}

void write_ciphertext(std::ostream& os, const Context& ctx, const Ciphertext& ct) {
  put_header(os, kCiphertextMagic, ctx);
  put_u8(os, static_cast<std::uint8_t>(ct.depth()));
  put_element(os, ct.c0());
  put_element(os, ct.c1());
  check_stream(os);
}

void write_cache_entry(std::ostream& os, const Context& ctx, const CacheEntry& entry) {
  os.write(kCacheMagic.data(), kCacheMagic.size());
  put_u8(os, kFormatVersion);
  put_u64(os, entry.dimension());
  for (double b : entry.base_slots()) put_f64(os, b);
  write_ciphertext(os, ctx, entry.base_ciphertext());
}

SecretKey read_secret_key(std::istream& is, const Context& ctx) {
  expect_header(is, kSecretKeyMagic, ctx);
  RingElement s = get_element(is, ctx);
  const u64 q = ctx.params().modulus;
  for (u64 v : s.values()) {
    if (v != 0 && v != 1 && v != q - 1) throw FormatError("secret key is not ternary");
  }
  RingElement s_eval = ntt_forward(s);
  return SecretKey{std::move(s), std::move(s_eval)};
}

PublicKey read_public_key(std::istream& is, const Context& ctx) {
  expect_header(is, kPublicKeyMagic, ctx);
  RingElement pk0 = get_element(is, ctx);
  RingElement pk1 = get_element(is, ctx);
  RingElement pk0_eval = ntt_forward(pk0);
  RingElement pk1_eval = ntt_forward(pk1);
  return PublicKey{std::move(pk0), std::move(pk1), std::move(pk0_eval), std::move(pk1_eval)};
}

Ciphertext read_ciphertext(std::istream& is, const Context& ctx) {
  expect_header(is, kCiphertextMagic, ctx);
  const std::uint8_t depth = get_u8(is);
  if (depth > 1) throw FormatError("ciphertext depth must be 0 or 1");
  RingElement c0 = get_element(is, ctx);
  RingElement c1 = get_element(is, ctx);
  const double scale = depth == 0 ? ctx.scale() : ctx.scale() * ctx.scale();
  return Ciphertext(std::move(c0), std::move(c1), scale, depth);
}

CacheEntry read_cache_entry(std::istream& is, const Context& ctx) {
  expect_magic(is, kCacheMagic);
  const std::uint64_t count = get_u64(is);
  if (count == 0 || count > ctx.slot_count()) throw FormatError("cache dimension out of range");
  SlotVector base(static_cast<Eigen::Index>(count));
  for (auto& b : base) b = get_f64(is);
  Ciphertext ct = read_ciphertext(is, ctx);
  try {
    return CacheEntry::from_parts(ctx, std::move(base), std::move(ct));
  } catch (const CacheError& e) {
    throw FormatError(std::string("invalid cache entry: ") + e.what());
  }
}

void save_secret_key(const std::filesystem::path& path, const Context& ctx, const SecretKey& sk) {
  with_output(path, [&](std::ostream& os) { write_secret_key(os, ctx, sk); });
}

void save_public_key(const std::filesystem::path& path, const Context& ctx, const PublicKey& pk) {
  with_output(path, [&](std::ostream& os) { write_public_key(os, ctx, pk); });
}

void save_cache_entry(const std::filesystem::path& path, const Context& ctx, const CacheEntry& entry) {
  with_output(path, [&](std::ostream& os) { write_cache_entry(os, ctx, entry); });
}

SecretKey load_secret_key(const std::filesystem::path& path, const Context& ctx) {
  return with_input(path, [&](std::istream& is) { return read_secret_key(is, ctx); });
}

PublicKey load_public_key(const std::filesystem::path& path, const Context& ctx) {
  return with_input(path, [&](std::istream& is) { return read_public_key(is, ctx); });
}

CacheEntry load_cache_entry(const std::filesystem::path& path, const Context& ctx) {
  return with_input(path, [&](std::istream& is) { return read_cache_entry(is, ctx); });
}

}  // namespace nemesis

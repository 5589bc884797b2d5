// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

// Little-endian binary formats. Every object starts with a 4-byte magic, a
// version byte and the parameter header (N u64, q u64, scale f64).
//
//   NMSK  header | s[N] u64
//   NMPK  header | pk0[N] u64 | pk1[N] u64
//   NMCT  header | depth u8 | c0[N] u64 | c1[N] u64      (coefficient domain)
//   NMCE  "NMCE" | version u8 | count u64 | base[count] f64 | NMCT object

#pragma once

#include <filesystem>
#include <iosfwd>

#include "nemesis/cache.hpp"
#include "nemesis/ckks.hpp"

namespace nemesis {

inline constexpr std::uint8_t kFormatVersion = 1;

void write_secret_key(std::ostream& os, const Context& ctx, const SecretKey& sk);
void write_public_key(std::ostream& os, const Context& ctx, const PublicKey& pk);
void write_ciphertext(std::ostream& os, const Context& ctx, const Ciphertext& ct);
void write_cache_entry(std::ostream& os, const Context& ctx, const CacheEntry& entry);

// Readers throw FormatError on bad magic, version, truncation, residues out of
// range, or a parameter header that does not match ctx.
SecretKey read_secret_key(std::istream& is, const Context& ctx);
PublicKey read_public_key(std::istream& is, const Context& ctx);
Ciphertext read_ciphertext(std::istream& is, const Context& ctx);
CacheEntry read_cache_entry(std::istream& is, const Context& ctx);

void save_secret_key(const std::filesystem::path& path, const Context& ctx, const SecretKey& sk);
void save_public_key(const std::filesystem::path& path, const Context& ctx, const PublicKey& pk);
void save_cache_entry(const std::filesystem::path& path, const Context& ctx, const CacheEntry& entry);
SecretKey load_secret_key(const std::filesystem::path& path, const Context& ctx);
PublicKey load_public_key(const std::filesystem::path& path, const Context& ctx);
CacheEntry load_cache_entry(const std::filesystem::path& path, const Context& ctx);

}  // namespace nemesis

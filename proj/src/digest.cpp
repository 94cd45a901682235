//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "fragtok/digest.h"

#include <cstring>

namespace fragtok {
namespace {

constexpr std::uint64_t rotl64(std::uint64_t x, int r) {
  return (x << r) | (x >> (64 - r));
}

constexpr std::uint64_t fmix64(std::uint64_t k) {
  k ^= k >> 33;
  k *= 0xff51afd7ed558ccdULL;
  k ^= k >> 33;
  k *= 0xc4ceb9fe1a85ec53ULL;
  k ^= k >> 33;
  return k;
}

std::uint64_t load_le64(const std::uint8_t *p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i)
    v = (v << 8) | p[i];
  return v;
}

void store_le64(std::uint8_t *p, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    p[i] = static_cast<std::uint8_t>(v & 0xff);
    v >>= 8;
  }
}

int hex_value(char c) {
  if (c >= '0' && c <= '9')
    return c - '0';
  if (c >= 'a' && c <= 'f')
    return c - 'a' + 10;
  if (c >= 'A' && c <= 'F')
    return c - 'A' + 10;
  return -1;
}

}  // namespace

Digest128 murmur3_x64_128(std::span<const std::uint8_t> data,
                          std::uint32_t seed) {
  const std::size_t len = data.size();
  const std::size_t nblocks = len / 16;
  const std::uint8_t *p = data.data();

  std::uint64_t h1 = seed, h2 = seed;
  constexpr std::uint64_t c1 = 0x87c37b91114253d5ULL;
  constexpr std::uint64_t c2 = 0x4cf5ad432745937fULL;

  for (std::size_t i = 0; i < nblocks; ++i) {
    std::uint64_t k1 = load_le64(p + i * 16);
    std::uint64_t k2 = load_le64(p + i * 16 + 8);

    k1 *= c1;
    k1 = rotl64(k1, 31);
    k1 *= c2;
    h1 ^= k1;
    h1 = rotl64(h1, 27);
    h1 += h2;
    h1 = h1 * 5 + 0x52dce729;

    k2 *= c2;
    k2 = rotl64(k2, 33);
    k2 *= c1;
    h2 ^= k2;
    h2 = rotl64(h2, 31);
    h2 += h1;
    h2 = h2 * 5 + 0x38495ab5;
  }

  const std::uint8_t *tail = p + nblocks * 16;
  std::uint64_t k1 = 0, k2 = 0;
  switch (len & 15) {
  case 15: k2 ^= std::uint64_t(tail[14]) << 48; [[fallthrough]];
  case 14: k2 ^= std::uint64_t(tail[13]) << 40; [[fallthrough]];
  case 13: k2 ^= std::uint64_t(tail[12]) << 32; [[fallthrough]];
  case 12: k2 ^= std::uint64_t(tail[11]) << 24; [[fallthrough]];
  case 11: k2 ^= std::uint64_t(tail[10]) << 16; [[fallthrough]];
  case 10: k2 ^= std::uint64_t(tail[9]) << 8; [[fallthrough]];
  case 9:
    k2 ^= std::uint64_t(tail[8]);
    k2 *= c2;
    k2 = rotl64(k2, 33);
    k2 *= c1;
    h2 ^= k2;
    [[fallthrough]];
  case 8: k1 ^= std::uint64_t(tail[7]) << 56; [[fallthrough]];
  case 7: k1 ^= std::uint64_t(tail[6]) << 48; [[fallthrough]];
  case 6: k1 ^= std::uint64_t(tail[5]) << 40; [[fallthrough]];
  case 5: k1 ^= std::uint64_t(tail[4]) << 32; [[fallthrough]];
  case 4: k1 ^= std::uint64_t(tail[3]) << 24; [[fallthrough]];
  case 3: k1 ^= std::uint64_t(tail[2]) << 16; [[fallthrough]];
  case 2: k1 ^= std::uint64_t(tail[1]) << 8; [[fallthrough]];
  case 1:
    k1 ^= std::uint64_t(tail[0]);
    k1 *= c1;
    k1 = rotl64(k1, 31);
    k1 *= c2;
    h1 ^= k1;
  }

  h1 ^= len;
  h2 ^= len;
  h1 += h2;
  h2 += h1;
  h1 = fmix64(h1);
  h2 = fmix64(h2);
  h1 += h2;
  h2 += h1;

  Digest128 out;
  store_le64(out.bytes.data(), h1);
  store_le64(out.bytes.data() + 8, h2);
  return out;
}

std::string Digest128::hex() const {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string s(32, '0');
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    s[2 * i] = kHex[bytes[i] >> 4];
    s[2 * i + 1] = kHex[bytes[i] & 0xf];
  }
  return s;
}

std::optional<Digest128> Digest128::from_hex(std::string_view hex) {
  if (hex.size() != 32)
    return std::nullopt;
  Digest128 d;
  for (std::size_t i = 0; i < 16; ++i) {
    int hi = hex_value(hex[2 * i]), lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0)
      return std::nullopt;
    d.bytes[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return d;
}

std::uint64_t Digest128::low64() const {
  return load_le64(bytes.data());
}

DigestBuilder &DigestBuilder::u32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    buf_.push_back(static_cast<std::uint8_t>(v & 0xff));
    v >>= 8;
  }
  return *this;
}

DigestBuilder &DigestBuilder::u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    buf_.push_back(static_cast<std::uint8_t>(v & 0xff));
    v >>= 8;
  }
  return *this;
}

DigestBuilder &DigestBuilder::digest(const Digest128 &d) {
  buf_.insert(buf_.end(), d.bytes.begin(), d.bytes.end());
  return *this;
}

DigestBuilder &DigestBuilder::bytes(std::span<const std::uint8_t> data) {
  buf_.insert(buf_.end(), data.begin(), data.end());
  return *this;
}

DigestBuilder &DigestBuilder::str(std::string_view s) {
  u32(static_cast<std::uint32_t>(s.size()));
  buf_.insert(buf_.end(), s.begin(), s.end());
  return *this;
}

}  // namespace fragtok

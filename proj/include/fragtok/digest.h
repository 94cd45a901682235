//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_DIGEST_H_
#define FRAGTOK_DIGEST_H_

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fragtok {

// 128-bit digest, stored and ordered as raw bytes. Produced by
// MurmurHash3_x64_128 with seed 0 over a canonical byte serialization;
// the byte layout is h1 then h2, each little-endian.
struct Digest128 {
  std::array<std::uint8_t, 16> bytes {};

  auto operator<=>(const Digest128 &) const = default;

  std::string hex() const;
  static std::optional<Digest128> from_hex(std::string_view hex);

  std::uint64_t low64() const;
};

Digest128 murmur3_x64_128(std::span<const std::uint8_t> data,
                          std::uint32_t seed = 0);

// Accumulates a little-endian byte serialization and hashes it.
class DigestBuilder {
public:
  DigestBuilder &u8(std::uint8_t v) {
    buf_.push_back(v);
    return *this;
  }
  DigestBuilder &u32(std::uint32_t v);
  DigestBuilder &i32(std::int32_t v) { return u32(static_cast<std::uint32_t>(v)); }
  DigestBuilder &u64(std::uint64_t v);
  DigestBuilder &digest(const Digest128 &d);
  DigestBuilder &bytes(std::span<const std::uint8_t> data);
  DigestBuilder &str(std::string_view s);

  Digest128 finish() const { return murmur3_x64_128(buf_); }

private:
  std::vector<std::uint8_t> buf_;
};

struct Digest128Hash {
  std::size_t operator()(const Digest128 &d) const noexcept {
    return static_cast<std::size_t>(d.low64());
  }
};

}  // namespace fragtok

#endif  // FRAGTOK_DIGEST_H_

#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace rpcgc {

// CRC-32 (IEEE 802.3, reflected 0xEDB88320), zlib-compatible.
namespace detail {

constexpr std::array<uint32_t, 256> makeCrcTable()
{
  std::array<uint32_t, 256> table{};
  for (uint32_t i = 0; i < 256; i++) {
    uint32_t c = i;
    for (int k = 0; k < 8; k++)
      c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
    table[i] = c;
  }
  return table;
}

inline constexpr auto kCrcTable = makeCrcTable();

}  // namespace detail

inline uint32_t crc32(std::span<const uint8_t> data, uint32_t seed = 0)
{
  uint32_t c = seed ^ 0xFFFFFFFFu;
  for (uint8_t byte : data)
    c = detail::kCrcTable[(c ^ byte) & 0xFF] ^ (c >> 8);
  return c ^ 0xFFFFFFFFu;
}

}  // namespace rpcgc

#pragma once

#include <cstdint>

#include "rpcgc/vec3.h"

namespace rpcgc {

// Voxel indices are limited to one signed 21-bit axis range so that a biased
// Morton key fits in 64 bits. Adding the bias sets bit 20 on every axis
// without carries, so key order on non-negative grids equals the order of
// the unbiased interleave used by the octree.
inline constexpr int32_t kMortonBias = 1 << 20;
inline constexpr int32_t kMaxVoxelIndex = kMortonBias - 1;
inline constexpr int32_t kMinVoxelIndex = -kMortonBias + 1;

inline uint64_t spreadBits21(uint32_t v)
{
  uint64_t x = v & 0x1FFFFF;
  x = (x | x << 32) & 0x001F00000000FFFF;
  x = (x | x << 16) & 0x001F0000FF0000FF;
  x = (x | x << 8) & 0x100F00F00F00F00F;
  x = (x | x << 4) & 0x10C30C30C30C30C3;
  x = (x | x << 2) & 0x1249249249249249;
  return x;
}

// x occupies the most significant bit of each interleaved triple, matching
// the octree child index (x_bit << 2) | (y_bit << 1) | z_bit.
inline uint64_t mortonKey(const Vec3i& v)
{
  return spreadBits21(static_cast<uint32_t>(v.x + kMortonBias)) << 2
    | spreadBits21(static_cast<uint32_t>(v.y + kMortonBias)) << 1
    | spreadBits21(static_cast<uint32_t>(v.z + kMortonBias));
}

}  // namespace rpcgc

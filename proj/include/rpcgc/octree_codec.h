#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rpcgc/point_cloud.h"

namespace rpcgc {

// Breadth-first octree occupancy representation of a voxel set. At level l a
// voxel's child index is (x_bit << 2) | (y_bit << 1) | z_bit, taking
// coordinate bits MSB-first; occupancy bit k (LSB-first in the byte) is set
// iff child k is occupied. Leaves appear in Morton order.
struct OccupancyStream {
  uint8_t depth = 0;
  std::vector<uint8_t> codes;
  std::vector<uint32_t> leafCounts;
};

// Requires a non-empty grid with non-negative voxel indices.
// depth = ceil(log2(maxExtent + 1)), at least 1.
OccupancyStream buildOctree(const VoxelGrid& grid);

struct ExpandedOctree {
  std::vector<Vec3i> voxels;  // Morton order
  std::vector<uint32_t> counts;
};

ExpandedOctree expandOctree(const OccupancyStream& stream);

// Base-layer bitstream, bit-exact layout:
//   "RPCB" u8:version=1 u8:depth f64:step 3*f64:origin u32:voxelCount
//   u32:payloadLen payload
// The payload is one range-coded segment: occupancy bytes under a 256-symbol
// adaptive model, then per-leaf point counts as Elias-gamma bits under an
// adaptive binary model. All integers little-endian.
std::vector<uint8_t> encodeBase(const VoxelGrid& grid);
VoxelGrid decodeBase(std::span<const uint8_t> bytes);

}  // namespace rpcgc

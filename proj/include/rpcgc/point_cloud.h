#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rpcgc/vec3.h"

namespace rpcgc {

struct PointCloud {
  std::vector<Vec3d> positions;
  std::vector<int32_t> labels;  // empty, or one category id per point

  size_t size() const { return positions.size(); }
  bool hasLabels() const { return !labels.empty(); }
};

struct Bounds {
  Vec3d lo;
  Vec3d hi;

  double maxExtent() const
  {
    return std::max(hi.x - lo.x, std::max(hi.y - lo.y, hi.z - lo.z));
  }
};

Bounds bounds(std::span<const Vec3d> points);

// Quantized, deduplicated base-layer representation. Voxels are kept in
// canonical Morton order with per-voxel source point multiplicities.
struct VoxelGrid {
  std::vector<Vec3i> voxels;
  std::vector<uint32_t> counts;
  double step = 1.0;
  Vec3d origin{0.0, 0.0, 0.0};

  size_t size() const { return voxels.size(); }
  uint64_t totalPoints() const;
  Vec3d center(size_t voxelIdx) const;
};

struct QuantizeResult {
  VoxelGrid grid;
  std::vector<uint32_t> assignment;  // per source point, index into grid.voxels
};

// Maps each point to round((p - origin) / step) per axis, rounding halves
// away from zero. Duplicate voxels merge; the assignment records where each
// original point went.
QuantizeResult quantize(const PointCloud& cloud, double step, const Vec3d& origin = {});

// One point per voxel at origin + v * step, in Morton order.
PointCloud dequantize(const VoxelGrid& grid);

}  // namespace rpcgc

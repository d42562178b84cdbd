#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "rpcgc/vec3.h"

namespace rpcgc {

struct RegionPartition {
  std::vector<uint32_t> fgIndices;
  std::vector<uint32_t> bgIndices;
};

// Per-point ROI weights m >= 0; the coding/metric weight of point i is
// 1 + values[i]. Foreground defaults to m = 1 (double weight), background
// stays at m = 0.
struct MaskMap {
  std::vector<double> values;

  size_t size() const { return values.size(); }
  double weight(size_t i) const { return 1.0 + values[i]; }
};

// A point is background iff its label is in backgroundSet.
RegionPartition selectRegions(
  std::span<const int32_t> labels, const std::set<int32_t>& backgroundSet);

MaskMap buildMask(const RegionPartition& partition, size_t pointCount, double fgValue = 1.0);

// Each target point takes the mask value of its nearest source point
// (squared Euclidean, ties to the smallest source index).
MaskMap transferMask(
  std::span<const Vec3d> sourcePoints, const MaskMap& sourceMask,
  std::span<const Vec3d> targetPoints);

}  // namespace rpcgc

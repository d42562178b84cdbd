#include "rpcgc/roi_mask.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rpcgc/spatial.h"

namespace rpcgc {

RegionPartition selectRegions(
  std::span<const int32_t> labels, const std::set<int32_t>& backgroundSet)
{
  RegionPartition partition;
  for (uint32_t i = 0; i < labels.size(); i++) {
    if (backgroundSet.count(labels[i]))
      partition.bgIndices.push_back(i);
    else
      partition.fgIndices.push_back(i);
  }
  return partition;
}

MaskMap buildMask(const RegionPartition& partition, size_t pointCount, double fgValue)
{
  if (!(fgValue >= 0.0) || !std::isfinite(fgValue))
    throw std::invalid_argument("buildMask: foreground mask value must be finite and >= 0");
  if (partition.fgIndices.size() + partition.bgIndices.size() != pointCount)
    throw std::invalid_argument(
      "buildMask: partition covers "
      + std::to_string(partition.fgIndices.size() + partition.bgIndices.size())
      + " points, expected " + std::to_string(pointCount));

  MaskMap mask;
  mask.values.assign(pointCount, -1.0);
  auto assign = [&](uint32_t idx, double value) {
    if (idx >= pointCount)
      throw std::invalid_argument(
        "buildMask: index " + std::to_string(idx) + " out of range");
    if (mask.values[idx] >= 0.0)
      throw std::invalid_argument(
        "buildMask: index " + std::to_string(idx) + " appears twice");
    mask.values[idx] = value;
  };
  for (uint32_t idx : partition.fgIndices)
    assign(idx, fgValue);
  for (uint32_t idx : partition.bgIndices)
    assign(idx, 0.0);
  return mask;
}

MaskMap transferMask(
  std::span<const Vec3d> sourcePoints, const MaskMap& sourceMask,
  std::span<const Vec3d> targetPoints)
{
  if (sourcePoints.empty())
    throw std::invalid_argument("transferMask: empty source");
  if (sourceMask.size() != sourcePoints.size())
    throw std::invalid_argument(
      "transferMask: mask size " + std::to_string(sourceMask.size())
      + " does not match source size " + std::to_string(sourcePoints.size()));

  KdTree index(std::vector<Vec3d>(sourcePoints.begin(), sourcePoints.end()));
  MaskMap out;
  out.values.reserve(targetPoints.size());
  for (const Vec3d& p : targetPoints)
    out.values.push_back(sourceMask.values[index.nearest(p).index]);
  return out;
}

}  // namespace rpcgc

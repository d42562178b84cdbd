#include "rpcgc/point_cloud.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rpcgc/morton.h"

namespace rpcgc {

Bounds bounds(std::span<const Vec3d> points)
{
  if (points.empty())
    return {};
  Bounds b{points[0], points[0]};
  for (const auto& p : points) {
    b.lo.x = std::min(b.lo.x, p.x);
    b.lo.y = std::min(b.lo.y, p.y);
    b.lo.z = std::min(b.lo.z, p.z);
    b.hi.x = std::max(b.hi.x, p.x);
    b.hi.y = std::max(b.hi.y, p.y);
    b.hi.z = std::max(b.hi.z, p.z);
  }
  return b;
}

uint64_t VoxelGrid::totalPoints() const
{
  uint64_t n = 0;
  for (uint32_t c : counts)
    n += c;
  return n;
}

Vec3d VoxelGrid::center(size_t voxelIdx) const
{
  const Vec3i& v = voxels[voxelIdx];
  return {origin.x + v.x * step, origin.y + v.y * step, origin.z + v.z * step};
}

namespace {

int32_t quantizeAxis(double value, double origin, double step)
{
  long long idx = std::llround((value - origin) / step);
  if (idx < kMinVoxelIndex || idx > kMaxVoxelIndex)
    throw std::invalid_argument(
      "quantize: voxel index " + std::to_string(idx)
      + " outside the supported 21-bit range; use a larger step");
  return static_cast<int32_t>(idx);
}

}  // namespace

QuantizeResult quantize(const PointCloud& cloud, double step, const Vec3d& origin)
{
  if (!(step > 0.0))
    throw std::invalid_argument("quantize: step must be positive");

  const size_t n = cloud.size();
  std::vector<uint64_t> keys(n);
  std::vector<Vec3i> pointVoxel(n);
  for (size_t i = 0; i < n; i++) {
    const Vec3d& p = cloud.positions[i];
    Vec3i v{
      quantizeAxis(p.x, origin.x, step),
      quantizeAxis(p.y, origin.y, step),
      quantizeAxis(p.z, origin.z, step)};
    pointVoxel[i] = v;
    keys[i] = mortonKey(v);
  }

  std::vector<uint64_t> uniqueKeys = keys;
  std::sort(uniqueKeys.begin(), uniqueKeys.end());
  uniqueKeys.erase(
    std::unique(uniqueKeys.begin(), uniqueKeys.end()), uniqueKeys.end());

  QuantizeResult out;
  out.grid.step = step;
  out.grid.origin = origin;
  out.grid.voxels.resize(uniqueKeys.size());
  out.grid.counts.assign(uniqueKeys.size(), 0);
  out.assignment.resize(n);

  for (size_t i = 0; i < n; i++) {
    auto it = std::lower_bound(uniqueKeys.begin(), uniqueKeys.end(), keys[i]);
    auto idx = static_cast<uint32_t>(it - uniqueKeys.begin());
    out.assignment[i] = idx;
    out.grid.voxels[idx] = pointVoxel[i];
    out.grid.counts[idx]++;
  }
  return out;
}

PointCloud dequantize(const VoxelGrid& grid)
{
  PointCloud cloud;
  cloud.positions.reserve(grid.size());
  for (size_t i = 0; i < grid.size(); i++)
    cloud.positions.push_back(grid.center(i));
  return cloud;
}

}  // namespace rpcgc

#include "rpcgc/octree_codec.h"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "rpcgc/byteio.h"
#include "rpcgc/entropy.h"
#include "rpcgc/errors.h"
#include "rpcgc/morton.h"

namespace rpcgc {

namespace {

constexpr char kBaseMagic[5] = "RPCB";
constexpr uint8_t kBaseVersion = 1;
constexpr uint32_t kOccupancyAlphabet = 256;
constexpr uint32_t kMaxDecodedNodes = 1u << 26;

int childIndex(const Vec3i& v, int shift)
{
  return ((v.x >> shift) & 1) << 2 | ((v.y >> shift) & 1) << 1 | ((v.z >> shift) & 1);
}

}  // namespace

OccupancyStream buildOctree(const VoxelGrid& grid)
{
  if (grid.size() == 0)
    throw std::invalid_argument("buildOctree: empty grid");

  int32_t maxExtent = 0;
  uint64_t prevKey = 0;
  for (size_t i = 0; i < grid.size(); i++) {
    const Vec3i& v = grid.voxels[i];
    if (v.x < 0 || v.y < 0 || v.z < 0)
      throw std::invalid_argument("buildOctree: negative voxel index");
    maxExtent = std::max({maxExtent, v.x, v.y, v.z});
    uint64_t key = mortonKey(v);
    if (i > 0 && key <= prevKey)
      throw std::invalid_argument("buildOctree: voxels not unique in Morton order");
    prevKey = key;
  }

  OccupancyStream stream;
  stream.depth = static_cast<uint8_t>(
    std::max(1, std::bit_width(static_cast<uint32_t>(maxExtent))));
  stream.leafCounts = grid.counts;

  // Voxels are Morton-sorted, so each node is a contiguous range and its
  // children split the range in ascending child-index order.
  std::vector<std::pair<uint32_t, uint32_t>> ranges{{0, static_cast<uint32_t>(grid.size())}};
  std::vector<std::pair<uint32_t, uint32_t>> next;
  for (int level = 0; level < stream.depth; level++) {
    int shift = stream.depth - 1 - level;
    next.clear();
    for (auto [begin, end] : ranges) {
      uint8_t occupancy = 0;
      uint32_t runStart = begin;
      int runChild = childIndex(grid.voxels[begin], shift);
      for (uint32_t i = begin + 1; i <= end; i++) {
        int child = i < end ? childIndex(grid.voxels[i], shift) : -1;
        if (child != runChild) {
          occupancy |= static_cast<uint8_t>(1u << runChild);
          next.emplace_back(runStart, i);
          runStart = i;
          runChild = child;
        }
      }
      stream.codes.push_back(occupancy);
    }
    ranges.swap(next);
  }
  return stream;
}

ExpandedOctree expandOctree(const OccupancyStream& stream)
{
  ExpandedOctree out;
  if (stream.depth == 0) {
    if (!stream.codes.empty() || !stream.leafCounts.empty())
      throw DecodeError("octree: depth 0 stream with payload");
    return out;
  }

  std::vector<Vec3i> nodes{{0, 0, 0}};
  std::vector<Vec3i> next;
  size_t cursor = 0;
  for (int level = 0; level < stream.depth; level++) {
    next.clear();
    for (const Vec3i& node : nodes) {
      if (cursor >= stream.codes.size())
        throw DecodeError("octree: occupancy codes exhausted at level " + std::to_string(level));
      uint8_t occupancy = stream.codes[cursor++];
      if (occupancy == 0)
        throw DecodeError("octree: zero occupancy byte at node " + std::to_string(cursor - 1));
      for (int child = 0; child < 8; child++) {
        if (!(occupancy & (1u << child)))
          continue;
        next.push_back(Vec3i{
          node.x << 1 | (child >> 2 & 1),
          node.y << 1 | (child >> 1 & 1),
          node.z << 1 | (child & 1)});
      }
    }
    if (next.size() > kMaxDecodedNodes)
      throw DecodeError("octree: implausible node count");
    nodes.swap(next);
  }

  if (cursor != stream.codes.size())
    throw DecodeError("octree: trailing occupancy codes");
  if (stream.leafCounts.size() != nodes.size())
    throw DecodeError(
      "octree: leaf count mismatch: " + std::to_string(stream.leafCounts.size())
      + " counts for " + std::to_string(nodes.size()) + " leaves");

  out.voxels = std::move(nodes);
  out.counts = stream.leafCounts;
  return out;
}

std::vector<uint8_t> encodeBase(const VoxelGrid& grid)
{
  if (!(grid.step > 0.0))
    throw std::invalid_argument("encodeBase: step must be positive");

  ByteWriter w;
  w.tag(kBaseMagic);
  w.u8(kBaseVersion);

  if (grid.size() == 0) {
    w.u8(0);
    w.f64(grid.step);
    w.f64(grid.origin.x);
    w.f64(grid.origin.y);
    w.f64(grid.origin.z);
    w.u32(0);
    w.u32(0);
    return w.take();
  }

  OccupancyStream stream = buildOctree(grid);
  w.u8(stream.depth);
  w.f64(grid.step);
  w.f64(grid.origin.x);
  w.f64(grid.origin.y);
  w.f64(grid.origin.z);
  w.u32(static_cast<uint32_t>(grid.size()));

  RangeEncoder enc;
  AdaptiveModel occupancyModel(kOccupancyAlphabet);
  for (uint8_t code : stream.codes)
    encodeSymbol(enc, occupancyModel, code);
  AdaptiveModel countBits(2);
  for (uint32_t count : stream.leafCounts)
    encodeGamma(enc, countBits, count);
  std::vector<uint8_t> payload = enc.finish();

  w.u32(static_cast<uint32_t>(payload.size()));
  w.raw(payload);
  return w.take();
}

VoxelGrid decodeBase(std::span<const uint8_t> bytes)
{
  ByteReader r(bytes);
  r.expectTag(kBaseMagic, "base stream");
  uint8_t version = r.u8();
  if (version != kBaseVersion)
    throw DecodeError("base stream: unsupported version " + std::to_string(version));

  uint8_t depth = r.u8();
  VoxelGrid grid;
  grid.step = r.f64();
  grid.origin = {r.f64(), r.f64(), r.f64()};
  uint32_t voxelCount = r.u32();
  uint32_t payloadLen = r.u32();
  if (!(grid.step > 0.0))
    throw DecodeError("base stream: non-positive step");
  if (payloadLen > r.remaining())
    throw DecodeError(
      "base stream: payload length " + std::to_string(payloadLen) + " exceeds "
      + std::to_string(r.remaining()) + " remaining bytes");

  if (voxelCount == 0) {
    if (depth != 0 || payloadLen != 0)
      throw DecodeError("base stream: empty grid with nonzero depth or payload");
    return grid;
  }
  if (depth == 0 || depth > 21)
    throw DecodeError("base stream: bad depth " + std::to_string(depth));

  std::span<const uint8_t> payload = r.raw(payloadLen);
  RangeDecoder dec(payload);
  AdaptiveModel occupancyModel(kOccupancyAlphabet);

  OccupancyStream stream;
  stream.depth = depth;
  uint64_t nodeCount = 1;
  for (int level = 0; level < depth; level++) {
    uint64_t childCount = 0;
    for (uint64_t n = 0; n < nodeCount; n++) {
      auto code = static_cast<uint8_t>(decodeSymbol(dec, occupancyModel));
      if (code == 0)
        throw DecodeError("base stream: zero occupancy byte");
      stream.codes.push_back(code);
      childCount += std::popcount(code);
    }
    if (childCount > kMaxDecodedNodes)
      throw DecodeError("base stream: implausible node count");
    nodeCount = childCount;
  }
  if (nodeCount != voxelCount)
    throw DecodeError(
      "base stream: leaf count " + std::to_string(nodeCount)
      + " does not match declared voxel count " + std::to_string(voxelCount));

  AdaptiveModel countBits(2);
  stream.leafCounts.reserve(voxelCount);
  for (uint32_t i = 0; i < voxelCount; i++) {
    uint64_t count = decodeGamma(dec, countBits);
    if (count > 0xFFFFFFFFull)
      throw DecodeError("base stream: implausible leaf count");
    stream.leafCounts.push_back(static_cast<uint32_t>(count));
  }

  ExpandedOctree expanded = expandOctree(stream);
  grid.voxels = std::move(expanded.voxels);
  grid.counts = std::move(expanded.counts);
  return grid;
}

}  // namespace rpcgc

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rpcgc/point_cloud.h"

namespace rpcgc {

enum class PlyFormat {
  kAscii,
  kBinaryLittleEndian,
};

// Reads ASCII or binary-little-endian PLY. Positions come from the float or
// double x/y/z vertex properties; an integer vertex property named "label"
// is read into PointCloud::labels when present. Throws ParseError naming the
// offending line (ASCII) or byte offset (binary).
PointCloud readPly(std::span<const uint8_t> bytes);

// Binary output round-trips positions and labels bit-exactly; ASCII output
// uses 17 significant digits, which also round-trips doubles.
std::vector<uint8_t> writePly(const PointCloud& cloud, PlyFormat format);

PointCloud loadPly(const std::string& path);
void savePly(const PointCloud& cloud, const std::string& path, PlyFormat format);

}  // namespace rpcgc

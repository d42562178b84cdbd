#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rpcgc/point_cloud.h"
#include "rpcgc/vec3.h"

namespace rpcgc {

// Exact nearest-neighbor index. Results match a brute-force scan bit for bit:
// squared distances use the sqDist() evaluation order and ties resolve to the
// smallest point index. Immutable after construction; concurrent queries are
// safe.
class KdTree {
public:
  struct Hit {
    uint32_t index;
    double sqDist;

    friend bool operator==(const Hit&, const Hit&) = default;
  };

  explicit KdTree(std::vector<Vec3d> points);

  size_t size() const { return _points.size(); }
  const Bounds& bounds() const { return _bounds; }
  std::span<const Vec3d> points() const { return _points; }

  Hit nearest(const Vec3d& query) const;

  // Ascending by (squared distance, index); k must be in [1, size()].
  std::vector<Hit> knn(const Vec3d& query, uint32_t k) const;

private:
  struct Node {
    // Leaves have childLeft == 0 and index [begin, end) into _order.
    double split = 0.0;
    uint32_t childLeft = 0;
    uint32_t childRight = 0;
    uint32_t begin = 0;
    uint32_t end = 0;
    uint8_t axis = 0;
  };

  uint32_t buildNode(uint32_t begin, uint32_t end);

  template<typename Visitor>
  void search(uint32_t nodeIdx, const Vec3d& query, Visitor& visit) const;

  std::vector<Vec3d> _points;
  std::vector<uint32_t> _order;
  std::vector<Node> _nodes;
  Bounds _bounds;
};

}  // namespace rpcgc

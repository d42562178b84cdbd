#include "rpcgc/spatial.h"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace rpcgc {

namespace {

constexpr uint32_t kLeafSize = 16;

}  // namespace

KdTree::KdTree(std::vector<Vec3d> points) : _points(std::move(points))
{
  if (_points.empty())
    throw std::invalid_argument("KdTree: cannot index an empty point set");
  _bounds = rpcgc::bounds(_points);
  _order.resize(_points.size());
  for (uint32_t i = 0; i < _points.size(); i++)
    _order[i] = i;
  _nodes.reserve(2 * _points.size() / kLeafSize + 2);
  buildNode(0, static_cast<uint32_t>(_points.size()));
}

uint32_t KdTree::buildNode(uint32_t begin, uint32_t end)
{
  auto nodeIdx = static_cast<uint32_t>(_nodes.size());
  _nodes.emplace_back();

  if (end - begin <= kLeafSize) {
    _nodes[nodeIdx].begin = begin;
    _nodes[nodeIdx].end = end;
    return nodeIdx;
  }

  Vec3d lo = _points[_order[begin]];
  Vec3d hi = lo;
  for (uint32_t i = begin; i < end; i++) {
    const Vec3d& p = _points[_order[i]];
    for (int a = 0; a < 3; a++) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  }
  uint8_t axis = 0;
  for (int a = 1; a < 3; a++)
    if (hi[a] - lo[a] > hi[axis] - lo[axis])
      axis = static_cast<uint8_t>(a);

  uint32_t mid = begin + (end - begin) / 2;
  std::nth_element(
    _order.begin() + begin, _order.begin() + mid, _order.begin() + end,
    [&](uint32_t a, uint32_t b) { return _points[a][axis] < _points[b][axis]; });

  _nodes[nodeIdx].axis = axis;
  _nodes[nodeIdx].split = _points[_order[mid]][axis];

  uint32_t left = buildNode(begin, mid);
  uint32_t right = buildNode(mid, end);
  _nodes[nodeIdx].childLeft = left;
  _nodes[nodeIdx].childRight = right;
  return nodeIdx;
}

template<typename Visitor>
void KdTree::search(uint32_t nodeIdx, const Vec3d& query, Visitor& visit) const
{
  const Node& node = _nodes[nodeIdx];
  if (node.childLeft == 0) {
    for (uint32_t i = node.begin; i < node.end; i++) {
      uint32_t idx = _order[i];
      visit.offer(idx, sqDist(query, _points[idx]));
    }
    return;
  }

  double delta = query[node.axis] - node.split;
  uint32_t near = delta < 0.0 ? node.childLeft : node.childRight;
  uint32_t far = delta < 0.0 ? node.childRight : node.childLeft;

  search(near, query, visit);
  // A far-side point at exactly the current worst distance can still win the
  // smallest-index tie, so prune on strict inequality only.
  if (delta * delta <= visit.worst())
    search(far, query, visit);
}

KdTree::Hit KdTree::nearest(const Vec3d& query) const
{
  struct NearestVisitor {
    Hit best{0, std::numeric_limits<double>::infinity()};

    void offer(uint32_t idx, double d)
    {
      if (d < best.sqDist || (d == best.sqDist && idx < best.index))
        best = {idx, d};
    }
    double worst() const { return best.sqDist; }
  } visitor;

  search(0, query, visitor);
  return visitor.best;
}

std::vector<KdTree::Hit> KdTree::knn(const Vec3d& query, uint32_t k) const
{
  if (k == 0 || k > _points.size())
    throw std::invalid_argument(
      "KdTree::knn: k = " + std::to_string(k) + " outside [1, "
      + std::to_string(_points.size()) + "]");

  struct KnnVisitor {
    uint32_t k;
    // max-heap on (sqDist, index); the root is the current worst accepted hit
    std::priority_queue<std::pair<double, uint32_t>> heap;

    void offer(uint32_t idx, double d)
    {
      if (heap.size() < k) {
        heap.emplace(d, idx);
      } else if (std::pair<double, uint32_t>{d, idx} < heap.top()) {
        heap.pop();
        heap.emplace(d, idx);
      }
    }
    double worst() const
    {
      return heap.size() < k ? std::numeric_limits<double>::infinity()
                             : heap.top().first;
    }
  } visitor{k, {}};

  search(0, query, visitor);

  std::vector<Hit> hits(visitor.heap.size());
  for (size_t i = hits.size(); i-- > 0;) {
    hits[i] = {visitor.heap.top().second, visitor.heap.top().first};
    visitor.heap.pop();
  }
  return hits;
}

}  // namespace rpcgc

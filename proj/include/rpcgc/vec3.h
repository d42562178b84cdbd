#pragma once

#include <cmath>
#include <cstdint>

namespace rpcgc {

template<typename T>
struct Vec3 {
  T x{};
  T y{};
  T z{};

  T& operator[](int i) { return i == 0 ? x : i == 1 ? y : z; }
  const T& operator[](int i) const { return i == 0 ? x : i == 1 ? y : z; }

  friend Vec3 operator+(const Vec3& a, const Vec3& b)
  {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Vec3 operator-(const Vec3& a, const Vec3& b)
  {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Vec3 operator*(const Vec3& a, T s) { return {a.x * s, a.y * s, a.z * s}; }
  friend Vec3 operator/(const Vec3& a, T s) { return {a.x / s, a.y / s, a.z / s}; }
  friend bool operator==(const Vec3& a, const Vec3& b) = default;
};

using Vec3d = Vec3<double>;
using Vec3i = Vec3<int32_t>;

inline double dot(const Vec3d& a, const Vec3d& b)
{
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

// Fixed evaluation order (x, then y, then z); the brute-force test oracles
// rely on computing the exact same value for the same point pair.
inline double sqDist(const Vec3d& a, const Vec3d& b)
{
  double dx = a.x - b.x;
  double dy = a.y - b.y;
  double dz = a.z - b.z;
  return dx * dx + dy * dy + dz * dz;
}

inline double maxAbsComponent(const Vec3d& v)
{
  return std::max(std::abs(v.x), std::max(std::abs(v.y), std::abs(v.z)));
}

}  // namespace rpcgc

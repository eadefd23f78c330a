#include "sonia/scene/geometry.hpp"

namespace sonia::scene {

Vec3 compute_centroid(const pack::MeshModel& mesh) {
  Vec3 sum;
  for (const auto& v : mesh.vertices) {
    sum.x += v.x;
    sum.y += v.y;
    sum.z += v.z;
  }
  const auto n = static_cast<double>(mesh.vertices.size());
  if (n == 0.0) return sum;
  return Vec3{sum.x / n, sum.y / n, sum.z / n};
}

}  // namespace sonia::scene

#pragma once

#include "sonia/pack/mesh.hpp"
#include "sonia/vec3.hpp"

namespace sonia::scene {

/// Unweighted arithmetic mean of the vertex list. Duplicate vertices count
/// once per occurrence, so authors can bias placement by vertex density.
Vec3 compute_centroid(const pack::MeshModel& mesh);

/// Reflection through the midsagittal plane: (x, y, z) -> (-x, y, z).
constexpr Vec3 mirror_point(const Vec3& p) { return Vec3{-p.x, p.y, p.z}; }

}  // namespace sonia::scene

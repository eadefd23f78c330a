#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sonia/diagnostic.hpp"
#include "sonia/vec3.hpp"

namespace sonia::pack {

using Face = std::array<std::uint32_t, 3>;

struct MeshModel {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;  // 0-based vertex indices

  bool operator==(const MeshModel&) const = default;
};

/// Parses the Wavefront OBJ subset used by content packs.
///
/// `v x y z [w]` and `f a b c ...` lines are read; face tokens may carry
/// `/vt/vn` suffixes, which are dropped, and polygons with more than three
/// corners are fan-triangulated. Comments and blank lines are skipped; any
/// other statement yields one W_IGNORED_LINE per keyword. Faces that repeat
/// an index or have zero area are kept with W_DEGENERATE_FACE.
Checked<MeshModel> parse_mesh(std::string_view text, const std::string& file = "<input>");

/// Emits `v`/`f` lines with shortest round-trip float formatting.
std::string write_obj(const MeshModel& mesh);

}  // namespace sonia::pack

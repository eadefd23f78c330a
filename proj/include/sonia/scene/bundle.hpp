#pragma once

#include <string>

#include "json.hpp"
#include "sonia/scene/compiled_scene.hpp"

namespace sonia::scene {

inline constexpr const char* kBundleFormat = "sonia-scene/1";

/// Mesh payload: {"vertices": [x0,y0,z0,x1,...], "faces": [a0,b0,c0,...]}.
nlohmann::json mesh_to_json(const pack::MeshModel& mesh);
pack::MeshModel mesh_from_json(const nlohmann::json& j);

/// The full scene bundle served at GET /scene and written by `sonia compile`.
nlohmann::json scene_to_json(const CompiledScene& scene);

/// Inverse of scene_to_json. Throws std::invalid_argument on a malformed bundle.
CompiledScene scene_from_json(const nlohmann::json& j);

/// Canonical bytes: two-space indent, sorted object keys, trailing newline.
std::string dump_canonical(const nlohmann::json& j);

}  // namespace sonia::scene

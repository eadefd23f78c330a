#pragma once

#include <map>
#include <string>
#include <vector>

#include "sonia/diagnostic.hpp"
#include "sonia/pack/content_pack.hpp"
#include "sonia/scene/palette.hpp"
#include "sonia/vec3.hpp"

namespace sonia::scene {

/// A key structure as shown in the small brain. The geometry hemisphere draws
/// the mesh in `color_shade`; the graph hemisphere draws a sphere at
/// `node_position` = mirror_point(centroid).
struct SceneNode {
  std::string structure_id;
  std::string name;
  std::string description;
  Vec3 centroid;
  Vec3 node_position;
  Color color_shade;

  bool operator==(const SceneNode&) const = default;
};

struct SceneEdge {
  std::string source_id;
  std::string target_id;
  std::vector<std::string> subsystem_ids;
  std::string description;

  bool operator==(const SceneEdge&) const = default;
};

struct PeripheralEntry {
  std::string structure_id;
  std::string name;

  bool operator==(const PeripheralEntry&) const = default;
};

/// One subsystem's slice of the connectivity diagram. Layout is the viewer's job.
struct DiagramGroup {
  std::string subsystem_id;
  std::vector<std::string> structure_ids;  // endpoint order of first appearance
  std::vector<pack::EdgeKey> edges;        // edge-list order

  bool operator==(const DiagramGroup&) const = default;
};

struct CompiledScene {
  std::vector<SceneNode> nodes;  // key structures, pack order
  std::vector<SceneEdge> edges;  // connections, pack order
  std::vector<PeripheralEntry> peripheral;
  std::vector<pack::EdgeKey> peripheral_edges;
  Palette palette;
  std::vector<pack::SubsystemDef> subsystems;
  std::vector<DiagramGroup> diagram;  // one group per subsystem, subsystem order
  std::map<std::string, pack::MeshModel> meshes;  // every structure, key and peripheral

  const SceneNode* find_node(std::string_view id) const;
  const SceneEdge* find_edge(std::string_view source, std::string_view target) const;

  bool operator==(const CompiledScene&) const = default;
};

/// Compiles a validated pack. Geometry shades are ranked by descending vertex
/// count (ties keep pack order), so the largest mesh is darkest. Key meshes
/// are expected in the left hemisphere; a centroid with x > 0 raises
/// W_RIGHT_HEMISPHERE. Zero key structures is E_EMPTY.
Checked<CompiledScene> compile_scene(const pack::ContentPack& pack);

}  // namespace sonia::scene

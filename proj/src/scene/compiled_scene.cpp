#include "sonia/scene/compiled_scene.hpp"

#include <algorithm>
#include <numeric>

#include "sonia/scene/geometry.hpp"

namespace sonia::scene {

const SceneNode* CompiledScene::find_node(std::string_view id) const {
  for (const auto& n : nodes) {
    if (n.structure_id == id) return &n;
  }
  return nullptr;
}

const SceneEdge* CompiledScene::find_edge(std::string_view source, std::string_view target) const {
  for (const auto& e : edges) {
    if (e.source_id == source && e.target_id == target) return &e;
  }
  return nullptr;
}

Checked<CompiledScene> compile_scene(const pack::ContentPack& pack) {
  Checked<CompiledScene> result;
  const auto keys = pack.key_structures();
  if (keys.empty()) {
    result.diagnostics.push_back(make_diag(DiagCode::kEmpty, "structures.csv", 0, "no key structures to compile"));
    return result;
  }

  CompiledScene scene;

  std::vector<std::size_t> vertex_counts;
  for (const auto* s : keys) {
    const auto it = pack.meshes.find(s->id);
    vertex_counts.push_back(it == pack.meshes.end() ? 0 : it->second.vertices.size());
  }
  std::vector<std::size_t> order(keys.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return vertex_counts[a] > vertex_counts[b]; });
  std::vector<std::size_t> rank(keys.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;

  for (std::size_t i = 0; i < keys.size(); ++i) {
    const auto* s = keys[i];
    SceneNode node{s->id, s->name, s->description, {}, {}, red_shade(rank[i], keys.size())};
    if (const auto it = pack.meshes.find(s->id); it != pack.meshes.end()) {
      node.centroid = compute_centroid(it->second);
    }
    node.node_position = mirror_point(node.centroid);
    if (node.centroid.x > 0.0) {
      result.diagnostics.push_back(make_diag(DiagCode::kRightHemisphere, s->mesh_file, 0,
                                             "centroid of '" + s->id +
                                                 "' lies in the right hemisphere; mirror the mesh"));
    }
    scene.nodes.push_back(std::move(node));
  }

  for (const auto& c : pack.connections) {
    scene.edges.push_back(SceneEdge{c.source_id, c.target_id, c.subsystem_ids, c.description});
  }

  for (const auto* s : pack.peripheral_structures()) {
    scene.peripheral.push_back(PeripheralEntry{s->id, s->name});
  }
  if (pack.peripheral_matrix) scene.peripheral_edges = pack.peripheral_matrix->edges();

  scene.subsystems = pack.subsystems;
  scene.palette = generate_palette(pack.subsystems);

  for (const auto& sub : pack.subsystems) {
    DiagramGroup group{sub.id, {}, {}};
    auto add_structure = [&](const std::string& id) {
      if (std::find(group.structure_ids.begin(), group.structure_ids.end(), id) == group.structure_ids.end()) {
        group.structure_ids.push_back(id);
      }
    };
    for (const auto& e : scene.edges) {
      if (std::find(e.subsystem_ids.begin(), e.subsystem_ids.end(), sub.id) == e.subsystem_ids.end()) continue;
      add_structure(e.source_id);
      add_structure(e.target_id);
      group.edges.emplace_back(e.source_id, e.target_id);
    }
    scene.diagram.push_back(std::move(group));
  }

  scene.meshes = pack.meshes;

  sort_diagnostics(result.diagnostics);
  result.value = std::move(scene);
  return result;
}

}  // namespace sonia::scene

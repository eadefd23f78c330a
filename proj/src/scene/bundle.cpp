#include "sonia/scene/bundle.hpp"

#include <stdexcept>

namespace sonia::scene {

using nlohmann::json;

namespace {

json vec_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("expected [x, y, z]");
  return Vec3{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json edge_key_to_json(const pack::EdgeKey& e) { return json::array({e.first, e.second}); }

pack::EdgeKey edge_key_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [source, target]");
  return {j[0].get<std::string>(), j[1].get<std::string>()};
}

Color color_from_json(const json& j) {
  const auto c = from_hex(j.get<std::string>());
  if (!c) throw std::invalid_argument("bad color " + j.dump());
  return *c;
}

}  // namespace

json mesh_to_json(const pack::MeshModel& mesh) {
  json vertices = json::array();
  for (const auto& v : mesh.vertices) {
    vertices.push_back(v.x);
    vertices.push_back(v.y);
    vertices.push_back(v.z);
  }
  json faces = json::array();
  for (const auto& f : mesh.faces) {
    faces.push_back(f[0]);
    faces.push_back(f[1]);
    faces.push_back(f[2]);
  }
  return json{{"vertices", std::move(vertices)}, {"faces", std::move(faces)}};
}

pack::MeshModel mesh_from_json(const json& j) {
  const auto& v = j.at("vertices");
  const auto& f = j.at("faces");
  if (v.size() % 3 != 0 || f.size() % 3 != 0) throw std::invalid_argument("mesh arrays not multiples of 3");
  pack::MeshModel mesh;
  for (std::size_t i = 0; i < v.size(); i += 3) {
    mesh.vertices.push_back(Vec3{v[i].get<double>(), v[i + 1].get<double>(), v[i + 2].get<double>()});
  }
  for (std::size_t i = 0; i < f.size(); i += 3) {
    mesh.faces.push_back({f[i].get<std::uint32_t>(), f[i + 1].get<std::uint32_t>(), f[i + 2].get<std::uint32_t>()});
  }
  return mesh;
}

json scene_to_json(const CompiledScene& scene) {
  json nodes = json::array();
  for (const auto& n : scene.nodes) {
    nodes.push_back({{"id", n.structure_id},
                     {"name", n.name},
                     {"description", n.description},
                     {"centroid", vec_to_json(n.centroid)},
                     {"node_position", vec_to_json(n.node_position)},
                     {"color_shade", to_hex(n.color_shade)}});
  }
  json edges = json::array();
  for (const auto& e : scene.edges) {
    edges.push_back({{"source", e.source_id},
                     {"target", e.target_id},
                     {"description", e.description},
                     {"subsystems", e.subsystem_ids}});
  }
  json subsystems = json::array();
  for (const auto& s : scene.subsystems) {
    subsystems.push_back({{"id", s.id}, {"name", s.name}, {"description", s.description}});
  }
  json palette = json::array();
  for (const auto& [id, color] : scene.palette.assignments) {
    palette.push_back({{"subsystem", id}, {"color", to_hex(color)}});
  }
  json diagram = json::array();
  for (const auto& g : scene.diagram) {
    json group_edges = json::array();
    for (const auto& e : g.edges) group_edges.push_back(edge_key_to_json(e));
    diagram.push_back({{"subsystem", g.subsystem_id}, {"structures", g.structure_ids}, {"edges", group_edges}});
  }
  json peripheral_structures = json::array();
  for (const auto& p : scene.peripheral) {
    peripheral_structures.push_back({{"id", p.structure_id}, {"name", p.name}});
  }
  json peripheral_edges = json::array();
  for (const auto& e : scene.peripheral_edges) peripheral_edges.push_back(edge_key_to_json(e));
  json meshes = json::object();
  for (const auto& [id, mesh] : scene.meshes) meshes[id] = mesh_to_json(mesh);

  return json{{"format", kBundleFormat},
              {"nodes", std::move(nodes)},
              {"edges", std::move(edges)},
              {"subsystems", std::move(subsystems)},
              {"palette", std::move(palette)},
              {"diagram", std::move(diagram)},
              {"peripheral", {{"structures", std::move(peripheral_structures)}, {"edges", std::move(peripheral_edges)}}},
              {"meshes", std::move(meshes)}};
}

CompiledScene scene_from_json(const json& j) {
  try {
    if (j.at("format").get<std::string>() != kBundleFormat) {
      throw std::invalid_argument("unsupported bundle format");
    }
    CompiledScene scene;
    for (const auto& n : j.at("nodes")) {
      scene.nodes.push_back(SceneNode{n.at("id").get<std::string>(), n.at("name").get<std::string>(),
                                      n.at("description").get<std::string>(), vec_from_json(n.at("centroid")),
                                      vec_from_json(n.at("node_position")), color_from_json(n.at("color_shade"))});
    }
    for (const auto& e : j.at("edges")) {
      scene.edges.push_back(SceneEdge{e.at("source").get<std::string>(), e.at("target").get<std::string>(),
                                      e.at("subsystems").get<std::vector<std::string>>(),
                                      e.at("description").get<std::string>()});
    }
    for (const auto& s : j.at("subsystems")) {
      scene.subsystems.push_back(pack::SubsystemDef{s.at("id").get<std::string>(), s.at("name").get<std::string>(),
                                                    s.at("description").get<std::string>()});
    }
    for (const auto& p : j.at("palette")) {
      scene.palette.assignments.emplace_back(p.at("subsystem").get<std::string>(), color_from_json(p.at("color")));
    }
    for (const auto& g : j.at("diagram")) {
      DiagramGroup group{g.at("subsystem").get<std::string>(), g.at("structures").get<std::vector<std::string>>(), {}};
      for (const auto& e : g.at("edges")) group.edges.push_back(edge_key_from_json(e));
      scene.diagram.push_back(std::move(group));
    }
    const auto& peripheral = j.at("peripheral");
    for (const auto& p : peripheral.at("structures")) {
      scene.peripheral.push_back(PeripheralEntry{p.at("id").get<std::string>(), p.at("name").get<std::string>()});
    }
    for (const auto& e : peripheral.at("edges")) scene.peripheral_edges.push_back(edge_key_from_json(e));
    for (const auto& [id, mesh] : j.at("meshes").items()) scene.meshes.emplace(id, mesh_from_json(mesh));
    return scene;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed scene bundle: ") + e.what());
  }
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

}  // namespace sonia::scene

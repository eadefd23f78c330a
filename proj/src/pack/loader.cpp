#include "sonia/pack/loader.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "parse_detail.hpp"

namespace fs = std::filesystem;

namespace sonia::pack {

namespace {

std::optional<std::string> slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

void append(std::vector<Diagnostic>& into, const std::vector<Diagnostic>& from) {
  into.insert(into.end(), from.begin(), from.end());
}

}  // namespace

Checked<ContentPack> load_pack(const fs::path& dir) {
  Checked<ContentPack> result;
  auto& diags = result.diagnostics;

  if (!fs::is_directory(dir)) {
    diags.push_back(make_diag(DiagCode::kMissingFile, dir.string(), 0, "pack directory not found"));
    return result;
  }

  auto required = [&](const char* name) {
    auto text = slurp(dir / name);
    if (!text) diags.push_back(make_diag(DiagCode::kMissingFile, name, 0, "required file is missing"));
    return text;
  };
  const auto structures_text = required("structures.csv");
  const auto connections_text = required("connections.csv");
  const auto matrix_text = required("matrix.csv");
  const auto subsystems_text = slurp(dir / "subsystems.csv");
  const auto peripheral_text = slurp(dir / "peripheral_matrix.csv");

  ContentPack pack;

  std::vector<std::size_t> structure_lines;
  bool structures_ok = false;
  if (structures_text) {
    auto parsed = detail::parse_structures(*structures_text, "structures.csv", &structure_lines);
    append(diags, parsed.diagnostics);
    if (parsed.ok()) {
      pack.structures = std::move(*parsed.value);
      structures_ok = true;
      if (pack.key_structures().empty()) {
        diags.push_back(make_diag(DiagCode::kEmpty, "structures.csv", 1, "pack declares no key structures"));
        structures_ok = false;
      }
    }
  }

  bool subsystems_ok = true;
  if (subsystems_text) {
    auto parsed = parse_subsystems(*subsystems_text, "subsystems.csv");
    append(diags, parsed.diagnostics);
    if (parsed.ok()) {
      pack.subsystems = std::move(*parsed.value);
    } else {
      subsystems_ok = false;
    }
  }

  std::vector<std::size_t> connection_lines;
  bool connections_ok = false;
  if (connections_text && structures_ok && subsystems_ok) {
    auto parsed = detail::parse_connections(*connections_text, pack.structures, pack.subsystems,
                                            "connections.csv", &connection_lines);
    append(diags, parsed.diagnostics);
    if (parsed.ok()) {
      pack.connections = std::move(*parsed.value);
      connections_ok = true;
    }
  }

  std::vector<std::size_t> matrix_lines;
  bool matrix_ok = false;
  if (matrix_text && structures_ok) {
    std::vector<std::string> key_ids;
    for (const auto* s : pack.key_structures()) key_ids.push_back(s->id);
    auto parsed = detail::parse_matrix(*matrix_text, key_ids, "matrix.csv", &matrix_lines);
    append(diags, parsed.diagnostics);
    if (parsed.ok()) {
      pack.key_matrix = std::move(*parsed.value);
      matrix_ok = true;
    }
  }

  if (peripheral_text && structures_ok) {
    std::vector<std::string> all_ids;
    for (const auto& s : pack.structures) all_ids.push_back(s.id);
    auto parsed = detail::parse_matrix(*peripheral_text, all_ids, "peripheral_matrix.csv", nullptr);
    append(diags, parsed.diagnostics);
    if (parsed.ok()) pack.peripheral_matrix = std::move(*parsed.value);
  }

  if (structures_ok) {
    std::map<std::string, MeshModel> by_file;
    std::set<std::string> failed_files;
    for (std::size_t i = 0; i < pack.structures.size(); ++i) {
      const auto& s = pack.structures[i];
      if (auto it = by_file.find(s.mesh_file); it != by_file.end()) {
        pack.meshes.emplace(s.id, it->second);
        continue;
      }
      if (failed_files.contains(s.mesh_file)) continue;
      const auto text = slurp(dir / s.mesh_file);
      if (!text || !fs::is_regular_file(dir / s.mesh_file)) {
        diags.push_back(make_diag(DiagCode::kMissingMesh, "structures.csv", structure_lines[i],
                                  "mesh file '" + s.mesh_file + "' for '" + s.id + "' not found"));
        failed_files.insert(s.mesh_file);
        continue;
      }
      auto mesh = parse_mesh(*text, s.mesh_file);
      append(diags, mesh.diagnostics);
      if (!mesh.ok()) {
        failed_files.insert(s.mesh_file);
        continue;
      }
      by_file.emplace(s.mesh_file, *mesh.value);
      pack.meshes.emplace(s.id, std::move(*mesh.value));
    }
  }

  if (!has_errors(diags) && connections_ok && matrix_ok) {
    std::set<EdgeKey> described;
    for (std::size_t i = 0; i < pack.connections.size(); ++i) {
      const auto& c = pack.connections[i];
      described.emplace(c.source_id, c.target_id);
    }
    const auto& m = pack.key_matrix;
    std::set<EdgeKey> in_matrix;
    for (std::size_t r = 0; r < m.size(); ++r) {
      for (std::size_t c = 0; c < m.size(); ++c) {
        if (m.at(r, c) == 0) continue;
        EdgeKey edge{m.ids[r], m.ids[c]};
        if (!described.contains(edge)) {
          diags.push_back(make_diag(DiagCode::kMatrixDescMismatch, "matrix.csv", matrix_lines[r],
                                    "edge " + edge.first + " -> " + edge.second +
                                        " has no row in connections.csv"));
        }
        in_matrix.insert(std::move(edge));
      }
    }
    for (std::size_t i = 0; i < pack.connections.size(); ++i) {
      const auto& c = pack.connections[i];
      if (!in_matrix.contains({c.source_id, c.target_id})) {
        diags.push_back(make_diag(DiagCode::kMatrixDescMismatch, "connections.csv", connection_lines[i],
                                  "connection " + c.source_id + " -> " + c.target_id +
                                      " is 0 in matrix.csv"));
      }
    }
  }

  sort_diagnostics(diags);
  if (!has_errors(diags)) result.value = std::move(pack);
  return result;
}

void write_pack(const ContentPack& pack, const fs::path& dir) {
  fs::create_directories(dir);
  auto put = [&](const fs::path& rel, const std::string& text) {
    const fs::path path = dir / rel;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
  };
  put("structures.csv", write_structures(pack.structures));
  if (!pack.subsystems.empty()) put("subsystems.csv", write_subsystems(pack.subsystems));
  put("connections.csv", write_connections(pack.connections));
  put("matrix.csv", write_matrix(pack.key_matrix));
  if (pack.peripheral_matrix) put("peripheral_matrix.csv", write_matrix(*pack.peripheral_matrix));

  std::set<std::string> written;
  for (const auto& s : pack.structures) {
    if (!written.insert(s.mesh_file).second) continue;
    if (auto it = pack.meshes.find(s.id); it != pack.meshes.end()) put(s.mesh_file, write_obj(it->second));
  }
}

}  // namespace sonia::pack

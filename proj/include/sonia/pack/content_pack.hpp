#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sonia/diagnostic.hpp"
#include "sonia/pack/mesh.hpp"

namespace sonia::pack {

enum class StructureKind { kKey, kPeripheral };

std::string_view to_string(StructureKind kind);

struct StructureDef {
  std::string id;  // [a-z0-9_]+
  std::string name;
  std::string description;  // required for key structures
  std::string mesh_file;    // relative to the pack directory
  StructureKind kind = StructureKind::kKey;

  bool operator==(const StructureDef&) const = default;
};

struct SubsystemDef {
  std::string id;
  std::string name;
  std::string description;

  bool operator==(const SubsystemDef&) const = default;
};

/// A directed information-flow edge source -> target.
struct ConnectionDef {
  std::string source_id;
  std::string target_id;
  std::string description;
  std::vector<std::string> subsystem_ids;  // distinct, in authored order

  bool operator==(const ConnectionDef&) const = default;
};

using EdgeKey = std::pair<std::string, std::string>;

/// Square binary matrix; entry (r, c) = 1 means a directed edge ids[r] -> ids[c].
struct ConnectivityMatrix {
  std::vector<std::string> ids;
  std::vector<std::uint8_t> entries;  // row-major, ids.size()^2

  std::size_t size() const { return ids.size(); }
  std::uint8_t at(std::size_t row, std::size_t col) const { return entries[row * ids.size() + col]; }
  /// Edges in row-major order.
  std::vector<EdgeKey> edges() const;

  bool operator==(const ConnectivityMatrix&) const = default;
};

struct ContentPack {
  std::vector<StructureDef> structures;
  std::vector<SubsystemDef> subsystems;
  std::vector<ConnectionDef> connections;
  ConnectivityMatrix key_matrix;
  std::optional<ConnectivityMatrix> peripheral_matrix;
  std::map<std::string, MeshModel> meshes;  // structure id -> mesh

  std::vector<const StructureDef*> key_structures() const;
  std::vector<const StructureDef*> peripheral_structures() const;
  const StructureDef* find_structure(std::string_view id) const;

  bool operator==(const ContentPack&) const = default;
};

bool is_slug(std::string_view id);

/// Header `id,name,description,mesh_file,kind`.
Checked<std::vector<StructureDef>> parse_structures(std::string_view text,
                                                    const std::string& file = "structures.csv");

/// Header `id,name,description`. An empty data section is legal.
Checked<std::vector<SubsystemDef>> parse_subsystems(std::string_view text,
                                                    const std::string& file = "subsystems.csv");

/// Header `source_id,target_id,description,subsystem_ids`; subsystem_ids is
/// `;`-separated and may be empty. Endpoints must be key structures.
Checked<std::vector<ConnectionDef>> parse_connections(std::string_view text,
                                                      const std::vector<StructureDef>& structures,
                                                      const std::vector<SubsystemDef>& subsystems,
                                                      const std::string& file = "connections.csv");

/// First row and column carry ids (the corner cell is ignored); rows must list
/// ids in the same order as the header. The header id set must equal
/// `expected_ids` (order-insensitive).
Checked<ConnectivityMatrix> parse_matrix(std::string_view text,
                                         const std::vector<std::string>& expected_ids,
                                         const std::string& file = "matrix.csv");

std::string write_structures(const std::vector<StructureDef>& structures);
std::string write_subsystems(const std::vector<SubsystemDef>& subsystems);
std::string write_connections(const std::vector<ConnectionDef>& connections);
std::string write_matrix(const ConnectivityMatrix& matrix);

}  // namespace sonia::pack

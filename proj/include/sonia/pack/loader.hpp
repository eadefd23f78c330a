#pragma once

#include <filesystem>

#include "sonia/pack/content_pack.hpp"

namespace sonia::pack {

/// Reads and cross-validates a pack directory.
///
/// Required: structures.csv, connections.csv, matrix.csv and every mesh file
/// named in structures.csv. Optional: subsystems.csv, peripheral_matrix.csv.
/// Tables that depend on a failed table are not parsed, and the cross-file
/// checks (matrix/connection agreement) run only when every file parsed
/// cleanly, so one authoring mistake produces one diagnostic. Diagnostics are
/// sorted by (file, line).
///
/// The peripheral matrix, when present, is indexed by every declared
/// structure, key and peripheral alike.
Checked<ContentPack> load_pack(const std::filesystem::path& dir);

/// Writes `pack` in the directory layout `load_pack` reads. Meshes are written
/// to each structure's mesh_file; structures sharing a file share its mesh.
void write_pack(const ContentPack& pack, const std::filesystem::path& dir);

}  // namespace sonia::pack

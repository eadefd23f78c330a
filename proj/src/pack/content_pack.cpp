#include "sonia/pack/content_pack.hpp"

#include <algorithm>
#include <set>

#include "parse_detail.hpp"
#include "sonia/pack/csv.hpp"

namespace sonia::pack {

namespace {

bool check_header(const Checked<std::vector<CsvRecord>>& csv, const std::vector<std::string>& expected,
                  const std::string& file, std::vector<Diagnostic>& diags) {
  if (!csv.ok()) {
    diags.insert(diags.end(), csv.diagnostics.begin(), csv.diagnostics.end());
    return false;
  }
  const auto& records = *csv.value;
  if (records.empty()) {
    diags.push_back(make_diag(DiagCode::kEmpty, file, 0, "file is empty; expected a header row"));
    return false;
  }
  if (records.front().fields != expected) {
    std::string want;
    for (const auto& f : expected) want += (want.empty() ? "" : ",") + f;
    diags.push_back(make_diag(DiagCode::kBadHeader, file, records.front().line,
                              "expected header '" + want + "'"));
    return false;
  }
  return true;
}

bool column_count_ok(const CsvRecord& rec, std::size_t want, const std::string& file,
                     std::vector<Diagnostic>& diags) {
  if (rec.fields.size() == want) return true;
  diags.push_back(make_diag(DiagCode::kBadRow, file, rec.line,
                            "expected " + std::to_string(want) + " columns, found " +
                                std::to_string(rec.fields.size())));
  return false;
}

std::vector<std::string> split_semicolons(const std::string& field) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= field.size()) {
    std::size_t end = field.find(';', start);
    if (end == std::string::npos) end = field.size();
    if (end > start) out.push_back(field.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

}  // namespace

std::string_view to_string(StructureKind kind) {
  return kind == StructureKind::kKey ? "key" : "peripheral";
}

bool is_slug(std::string_view id) {
  return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

std::vector<EdgeKey> ConnectivityMatrix::edges() const {
  std::vector<EdgeKey> out;
  for (std::size_t r = 0; r < ids.size(); ++r) {
    for (std::size_t c = 0; c < ids.size(); ++c) {
      if (at(r, c) != 0) out.emplace_back(ids[r], ids[c]);
    }
  }
  return out;
}

std::vector<const StructureDef*> ContentPack::key_structures() const {
  std::vector<const StructureDef*> out;
  for (const auto& s : structures) {
    if (s.kind == StructureKind::kKey) out.push_back(&s);
  }
  return out;
}

std::vector<const StructureDef*> ContentPack::peripheral_structures() const {
  std::vector<const StructureDef*> out;
  for (const auto& s : structures) {
    if (s.kind == StructureKind::kPeripheral) out.push_back(&s);
  }
  return out;
}

const StructureDef* ContentPack::find_structure(std::string_view id) const {
  for (const auto& s : structures) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

namespace detail {

Checked<std::vector<StructureDef>> parse_structures(std::string_view text, const std::string& file,
                                                    std::vector<std::size_t>* lines) {
  Checked<std::vector<StructureDef>> result;
  auto& diags = result.diagnostics;
  const auto csv = read_csv(text, file);
  if (!check_header(csv, {"id", "name", "description", "mesh_file", "kind"}, file, diags)) {
    return result;
  }
  std::vector<StructureDef> out;
  std::set<std::string, std::less<>> seen;
  const auto& records = *csv.value;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& rec = records[i];
    if (!column_count_ok(rec, 5, file, diags)) continue;
    const auto& f = rec.fields;
    StructureDef def{f[0], f[1], f[2], f[3], StructureKind::kKey};
    if (!is_slug(def.id)) {
      diags.push_back(make_diag(DiagCode::kBadId, file, rec.line,
                                "id '" + def.id + "' must match [a-z0-9_]+"));
      continue;
    }
    if (f[4] == "key") {
      def.kind = StructureKind::kKey;
    } else if (f[4] == "peripheral") {
      def.kind = StructureKind::kPeripheral;
    } else {
      diags.push_back(make_diag(DiagCode::kBadRow, file, rec.line,
                                "kind '" + f[4] + "' is not 'key' or 'peripheral'"));
      continue;
    }
    if (def.mesh_file.empty() || def.mesh_file.front() == '/') {
      diags.push_back(make_diag(DiagCode::kBadRow, file, rec.line,
                                "mesh_file must be a non-empty relative path"));
      continue;
    }
    if (def.kind == StructureKind::kKey && def.description.empty()) {
      diags.push_back(make_diag(DiagCode::kMissingDesc, file, rec.line,
                                "key structure '" + def.id + "' has no description"));
      continue;
    }
    if (!seen.insert(def.id).second) {
      diags.push_back(make_diag(DiagCode::kDupId, file, rec.line, "duplicate structure id '" + def.id + "'"));
      continue;
    }
    out.push_back(std::move(def));
    if (lines != nullptr) lines->push_back(rec.line);
  }
  if (!has_errors(diags)) result.value = std::move(out);
  return result;
}

Checked<std::vector<ConnectionDef>> parse_connections(std::string_view text,
                                                      const std::vector<StructureDef>& structures,
                                                      const std::vector<SubsystemDef>& subsystems,
                                                      const std::string& file,
                                                      std::vector<std::size_t>* lines) {
  Checked<std::vector<ConnectionDef>> result;
  auto& diags = result.diagnostics;
  const auto csv = read_csv(text, file);
  if (!check_header(csv, {"source_id", "target_id", "description", "subsystem_ids"}, file, diags)) {
    return result;
  }

  auto key_structure = [&](const std::string& id) -> const StructureDef* {
    for (const auto& s : structures) {
      if (s.id == id) return &s;
    }
    return nullptr;
  };
  std::set<std::string, std::less<>> subsystem_ids;
  for (const auto& s : subsystems) subsystem_ids.insert(s.id);

  std::vector<ConnectionDef> out;
  std::set<EdgeKey> seen;
  const auto& records = *csv.value;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& rec = records[i];
    if (!column_count_ok(rec, 4, file, diags)) continue;
    const auto& f = rec.fields;
    ConnectionDef def{f[0], f[1], f[2], {}};

    bool ok = true;
    for (const auto* endpoint : {&def.source_id, &def.target_id}) {
      const auto* s = key_structure(*endpoint);
      if (s == nullptr) {
        diags.push_back(make_diag(DiagCode::kIdMismatch, file, rec.line,
                                  "unknown structure id '" + *endpoint + "'"));
        ok = false;
        break;
      }
      if (s->kind != StructureKind::kKey) {
        diags.push_back(make_diag(DiagCode::kIdMismatch, file, rec.line,
                                  "'" + *endpoint + "' is a peripheral structure"));
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    if (def.source_id == def.target_id) {
      diags.push_back(make_diag(DiagCode::kSelfLoop, file, rec.line, "self-loop on '" + def.source_id + "'"));
      continue;
    }
    for (auto& token : split_semicolons(f[3])) {
      if (subsystem_ids.find(token) == subsystem_ids.end()) {
        diags.push_back(make_diag(DiagCode::kIdMismatch, file, rec.line,
                                  "unknown subsystem id '" + token + "'"));
        ok = false;
        break;
      }
      if (std::find(def.subsystem_ids.begin(), def.subsystem_ids.end(), token) ==
          def.subsystem_ids.end()) {
        def.subsystem_ids.push_back(std::move(token));
      }
    }
    if (!ok) continue;
    if (!seen.emplace(def.source_id, def.target_id).second) {
      diags.push_back(make_diag(DiagCode::kDupId, file, rec.line,
                                "duplicate connection " + def.source_id + " -> " + def.target_id));
      continue;
    }
    out.push_back(std::move(def));
    if (lines != nullptr) lines->push_back(rec.line);
  }
  if (!has_errors(diags)) result.value = std::move(out);
  return result;
}

Checked<ConnectivityMatrix> parse_matrix(std::string_view text,
                                         const std::vector<std::string>& expected_ids,
                                         const std::string& file,
                                         std::vector<std::size_t>* row_lines) {
  Checked<ConnectivityMatrix> result;
  auto& diags = result.diagnostics;
  const auto csv = read_csv(text, file);
  if (!csv.ok()) {
    diags = csv.diagnostics;
    return result;
  }
  const auto& records = *csv.value;
  if (records.empty()) {
    diags.push_back(make_diag(DiagCode::kEmpty, file, 0, "matrix file is empty"));
    return result;
  }

  const auto& header = records.front();
  ConnectivityMatrix m;
  m.ids.assign(header.fields.begin() + 1, header.fields.end());
  {
    std::set<std::string> seen;
    for (const auto& id : m.ids) {
      if (!seen.insert(id).second) {
        diags.push_back(make_diag(DiagCode::kDupId, file, header.line, "duplicate matrix id '" + id + "'"));
        return result;
      }
    }
    const std::set<std::string> expected(expected_ids.begin(), expected_ids.end());
    if (seen != expected) {
      std::string detail;
      for (const auto& id : expected) {
        if (!seen.contains(id)) detail += " missing '" + id + "'";
      }
      for (const auto& id : seen) {
        if (!expected.contains(id)) detail += " unexpected '" + id + "'";
      }
      diags.push_back(make_diag(DiagCode::kIdMismatch, file, header.line,
                                "header ids do not match declared structures:" + detail));
      return result;
    }
  }

  const std::size_t n = m.ids.size();
  m.entries.assign(n * n, 0);
  const std::size_t rows = records.size() - 1;
  if (rows != n) {
    diags.push_back(make_diag(DiagCode::kBadRow, file, records.back().line,
                              "matrix is not square: " + std::to_string(rows) + " rows for " +
                                  std::to_string(n) + " columns"));
  }
  for (std::size_t r = 0; r < std::min(rows, n); ++r) {
    const auto& rec = records[r + 1];
    if (rec.fields.size() != n + 1) {
      diags.push_back(make_diag(DiagCode::kBadRow, file, rec.line,
                                "expected " + std::to_string(n) + " cells, found " +
                                    std::to_string(rec.fields.size() - 1) + " (matrix is not square)"));
      continue;
    }
    if (rec.fields[0] != m.ids[r]) {
      diags.push_back(make_diag(DiagCode::kIdMismatch, file, rec.line,
                                "row label '" + rec.fields[0] + "' does not match column '" + m.ids[r] + "'"));
      continue;
    }
    for (std::size_t c = 0; c < n; ++c) {
      const auto& cell = rec.fields[c + 1];
      if (cell != "0" && cell != "1") {
        diags.push_back(make_diag(DiagCode::kBadRow, file, rec.line,
                                  "cell (" + m.ids[r] + "," + m.ids[c] + ") = '" + cell + "' is not 0 or 1"));
        break;
      }
      if (cell == "1" && r == c) {
        diags.push_back(make_diag(DiagCode::kSelfLoop, file, rec.line, "nonzero diagonal at '" + m.ids[r] + "'"));
        break;
      }
      m.entries[r * n + c] = cell == "1" ? 1 : 0;
    }
    if (row_lines != nullptr) row_lines->push_back(rec.line);
  }
  if (!has_errors(diags)) result.value = std::move(m);
  return result;
}

}  // namespace detail

Checked<std::vector<StructureDef>> parse_structures(std::string_view text, const std::string& file) {
  return detail::parse_structures(text, file, nullptr);
}

Checked<std::vector<SubsystemDef>> parse_subsystems(std::string_view text, const std::string& file) {
  Checked<std::vector<SubsystemDef>> result;
  auto& diags = result.diagnostics;
  const auto csv = read_csv(text, file);
  if (!check_header(csv, {"id", "name", "description"}, file, diags)) return result;

  std::vector<SubsystemDef> out;
  std::set<std::string, std::less<>> seen;
  const auto& records = *csv.value;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& rec = records[i];
    if (!column_count_ok(rec, 3, file, diags)) continue;
    SubsystemDef def{rec.fields[0], rec.fields[1], rec.fields[2]};
    if (!is_slug(def.id)) {
      diags.push_back(make_diag(DiagCode::kBadId, file, rec.line, "id '" + def.id + "' must match [a-z0-9_]+"));
      continue;
    }
    if (!seen.insert(def.id).second) {
      diags.push_back(make_diag(DiagCode::kDupId, file, rec.line, "duplicate subsystem id '" + def.id + "'"));
      continue;
    }
    out.push_back(std::move(def));
  }
  if (!has_errors(diags)) result.value = std::move(out);
  return result;
}

Checked<std::vector<ConnectionDef>> parse_connections(std::string_view text,
                                                      const std::vector<StructureDef>& structures,
                                                      const std::vector<SubsystemDef>& subsystems,
                                                      const std::string& file) {
  return detail::parse_connections(text, structures, subsystems, file, nullptr);
}

Checked<ConnectivityMatrix> parse_matrix(std::string_view text,
                                         const std::vector<std::string>& expected_ids,
                                         const std::string& file) {
  return detail::parse_matrix(text, expected_ids, file, nullptr);
}

std::string write_structures(const std::vector<StructureDef>& structures) {
  std::string out = csv_row({"id", "name", "description", "mesh_file", "kind"});
  for (const auto& s : structures) {
    out += csv_row({s.id, s.name, s.description, s.mesh_file, std::string(to_string(s.kind))});
  }
  return out;
}

std::string write_subsystems(const std::vector<SubsystemDef>& subsystems) {
  std::string out = csv_row({"id", "name", "description"});
  for (const auto& s : subsystems) out += csv_row({s.id, s.name, s.description});
  return out;
}

std::string write_connections(const std::vector<ConnectionDef>& connections) {
  std::string out = csv_row({"source_id", "target_id", "description", "subsystem_ids"});
  for (const auto& c : connections) {
    std::string subs;
    for (const auto& s : c.subsystem_ids) subs += (subs.empty() ? "" : ";") + s;
    out += csv_row({c.source_id, c.target_id, c.description, subs});
  }
  return out;
}

std::string write_matrix(const ConnectivityMatrix& matrix) {
  std::vector<std::string> header{""};
  header.insert(header.end(), matrix.ids.begin(), matrix.ids.end());
  std::string out = csv_row(header);
  for (std::size_t r = 0; r < matrix.size(); ++r) {
    std::vector<std::string> row{matrix.ids[r]};
    for (std::size_t c = 0; c < matrix.size(); ++c) row.push_back(matrix.at(r, c) ? "1" : "0");
    out += csv_row(row);
  }
  return out;
}

}  // namespace sonia::pack

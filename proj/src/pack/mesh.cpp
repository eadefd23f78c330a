#include "sonia/pack/mesh.hpp"

#include <charconv>
#include <cmath>
#include <set>

namespace sonia::pack {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

bool parse_double(std::string_view token, double& out) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc{} && ptr == token.data() + token.size();
}

bool parse_index(std::string_view token, long long& out) {
  token = token.substr(0, token.find('/'));
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return !token.empty() && ec == std::errc{} && ptr == token.data() + token.size();
}

bool zero_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double ux = b.x - a.x, uy = b.y - a.y, uz = b.z - a.z;
  const double vx = c.x - a.x, vy = c.y - a.y, vz = c.z - a.z;
  const double cx = uy * vz - uz * vy;
  const double cy = uz * vx - ux * vz;
  const double cz = ux * vy - uy * vx;
  return cx == 0.0 && cy == 0.0 && cz == 0.0;
}

}  // namespace

Checked<MeshModel> parse_mesh(std::string_view text, const std::string& file) {
  Checked<MeshModel> result;
  auto& diags = result.diagnostics;
  MeshModel mesh;

  struct PendingFace {
    std::size_t line;
    std::vector<long long> indices;
  };
  std::vector<PendingFace> pending;
  std::set<std::string, std::less<>> ignored_keywords;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    const auto tokens = split_ws(line);
    if (tokens.empty() || tokens[0].starts_with('#')) {
      if (eol == text.size()) break;
      continue;
    }
    const std::string_view kw = tokens[0];
    if (kw == "v") {
      if (tokens.size() != 4 && tokens.size() != 5) {
        diags.push_back(make_diag(DiagCode::kBadRow, file, line_no,
                                  "vertex needs 3 coordinates (optionally w)"));
      } else {
        double xyz[3];
        bool ok = true;
        for (int k = 0; k < 3 && ok; ++k) ok = parse_double(tokens[k + 1], xyz[k]);
        if (!ok) {
          diags.push_back(make_diag(DiagCode::kBadRow, file, line_no, "non-numeric vertex coordinate"));
        } else if (!std::isfinite(xyz[0]) || !std::isfinite(xyz[1]) || !std::isfinite(xyz[2])) {
          diags.push_back(make_diag(DiagCode::kNonFinite, file, line_no, "vertex coordinate is not finite"));
        }
        mesh.vertices.push_back(ok ? Vec3{xyz[0], xyz[1], xyz[2]} : Vec3{});
      }
    } else if (kw == "f") {
      if (tokens.size() < 4) {
        diags.push_back(make_diag(DiagCode::kBadRow, file, line_no, "face needs at least 3 indices"));
      } else {
        PendingFace face{line_no, {}};
        bool ok = true;
        for (std::size_t k = 1; k < tokens.size() && ok; ++k) {
          long long idx = 0;
          ok = parse_index(tokens[k], idx);
          face.indices.push_back(idx);
        }
        if (ok) {
          pending.push_back(std::move(face));
        } else {
          diags.push_back(make_diag(DiagCode::kBadRow, file, line_no, "non-numeric face index"));
        }
      }
    } else if (ignored_keywords.find(kw) == ignored_keywords.end()) {
      ignored_keywords.emplace(kw);
      diags.push_back(make_diag(DiagCode::kIgnoredLine, file, line_no,
                                "unsupported statement '" + std::string(kw) + "' ignored"));
    }
    if (eol == text.size()) break;
  }

  // Face indices are resolved after all vertices are known.
  const auto n = static_cast<long long>(mesh.vertices.size());
  for (const auto& face : pending) {
    bool in_range = true;
    for (long long idx : face.indices) {
      if (idx < 1 || idx > n) {
        diags.push_back(make_diag(DiagCode::kMeshIndex, file, face.line,
                                  "face index " + std::to_string(idx) + " outside 1.." +
                                      std::to_string(n)));
        in_range = false;
        break;
      }
    }
    if (!in_range) continue;
    bool degenerate = false;
    for (std::size_t k = 1; k + 1 < face.indices.size(); ++k) {
      Face tri{static_cast<std::uint32_t>(face.indices[0] - 1),
               static_cast<std::uint32_t>(face.indices[k] - 1),
               static_cast<std::uint32_t>(face.indices[k + 1] - 1)};
      if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] ||
          zero_area(mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]])) {
        degenerate = true;
      }
      mesh.faces.push_back(tri);
    }
    if (degenerate) {
      diags.push_back(make_diag(DiagCode::kDegenerateFace, file, face.line, "degenerate face kept"));
    }
  }

  if (mesh.vertices.empty() || (mesh.faces.empty() && pending.empty())) {
    diags.push_back(make_diag(DiagCode::kEmpty, file, 0,
                              mesh.vertices.empty() ? "mesh has no vertices" : "mesh has no faces"));
  }

  sort_diagnostics(diags);
  if (!has_errors(diags)) result.value = std::move(mesh);
  return result;
}

std::string write_obj(const MeshModel& mesh) {
  std::string out;
  char buf[64];
  auto put = [&](double v) {
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, ptr);
  };
  for (const auto& v : mesh.vertices) {
    out += "v ";
    put(v.x);
    out += ' ';
    put(v.y);
    out += ' ';
    put(v.z);
    out += '\n';
  }
  for (const auto& f : mesh.faces) {
    out += "f " + std::to_string(f[0] + 1) + ' ' + std::to_string(f[1] + 1) + ' ' +
           std::to_string(f[2] + 1) + '\n';
  }
  return out;
}

}  // namespace sonia::pack

#include "sonia/diagnostic.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace sonia {

namespace {

constexpr std::array<std::pair<DiagCode, std::string_view>, 17> kCodeNames{{
    {DiagCode::kDupId, "E_DUP_ID"},
    {DiagCode::kSelfLoop, "E_SELF_LOOP"},
    {DiagCode::kIdMismatch, "E_ID_MISMATCH"},
    {DiagCode::kMissingMesh, "E_MISSING_MESH"},
    {DiagCode::kMatrixDescMismatch, "E_MATRIX_DESC_MISMATCH"},
    {DiagCode::kBadRow, "E_BAD_ROW"},
    {DiagCode::kMeshIndex, "E_MESH_INDEX"},
    {DiagCode::kEmpty, "E_EMPTY"},
    {DiagCode::kBadHeader, "E_BAD_HEADER"},
    {DiagCode::kMissingFile, "E_MISSING_FILE"},
    {DiagCode::kBadId, "E_BAD_ID"},
    {DiagCode::kMissingDesc, "E_MISSING_DESC"},
    {DiagCode::kNonFinite, "E_NONFINITE"},
    {DiagCode::kCsvSyntax, "E_CSV_SYNTAX"},
    {DiagCode::kDegenerateFace, "W_DEGENERATE_FACE"},
    {DiagCode::kIgnoredLine, "W_IGNORED_LINE"},
    {DiagCode::kRightHemisphere, "W_RIGHT_HEMISPHERE"},
}};

}  // namespace

std::string_view to_string(DiagCode code) {
  for (const auto& [c, name] : kCodeNames) {
    if (c == code) return name;
  }
  return "E_UNKNOWN";
}

std::optional<DiagCode> diag_code_from_string(std::string_view name) {
  for (const auto& [c, n] : kCodeNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

std::string_view to_string(Severity severity) {
  return severity == Severity::kError ? "error" : "warning";
}

Severity default_severity(DiagCode code) {
  return to_string(code).starts_with("W_") ? Severity::kWarning : Severity::kError;
}

Diagnostic make_diag(DiagCode code, std::string file, std::size_t line, std::string message) {
  return Diagnostic{code, default_severity(code), Location{std::move(file), line},
                    std::move(message)};
}

std::string format_diagnostic(const Diagnostic& d) {
  std::string out = d.location.file;
  out += ':';
  out += std::to_string(d.location.line);
  out += ": ";
  out += to_string(d.code);
  out += ' ';
  out += d.message;
  return out;
}

std::ostream& operator<<(std::ostream& os, const Diagnostic& d) {
  return os << format_diagnostic(d);
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::kError; });
}

void sort_diagnostics(std::vector<Diagnostic>& diags) {
  std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
    if (a.location.file != b.location.file) return a.location.file < b.location.file;
    return a.location.line < b.location.line;
  });
}

}  // namespace sonia

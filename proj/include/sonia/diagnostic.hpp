#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace sonia {

enum class DiagCode {
  // errors
  kDupId,
  kSelfLoop,
  kIdMismatch,
  kMissingMesh,
  kMatrixDescMismatch,
  kBadRow,
  kMeshIndex,
  kEmpty,
  kBadHeader,
  kMissingFile,
  kBadId,
  kMissingDesc,
  kNonFinite,
  kCsvSyntax,
  // warnings
  kDegenerateFace,
  kIgnoredLine,
  kRightHemisphere,
};

enum class Severity { kError, kWarning };

/// Stable wire name, e.g. "E_DUP_ID" or "W_DEGENERATE_FACE".
std::string_view to_string(DiagCode code);
std::optional<DiagCode> diag_code_from_string(std::string_view name);
std::string_view to_string(Severity severity);

/// Codes starting with W_ are warnings; everything else blocks.
Severity default_severity(DiagCode code);

struct Location {
  std::string file;
  // 1-based; 0 means the diagnostic applies to the whole file.
  std::size_t line = 0;

  bool operator==(const Location&) const = default;
};

struct Diagnostic {
  DiagCode code;
  Severity severity;
  Location location;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

Diagnostic make_diag(DiagCode code, std::string file, std::size_t line, std::string message);

/// `file:line: CODE message`, the form printed by `sonia validate`.
std::string format_diagnostic(const Diagnostic& d);
std::ostream& operator<<(std::ostream& os, const Diagnostic& d);

bool has_errors(const std::vector<Diagnostic>& diags);

/// Stable sort by (file, line); diagnostics on the same line keep emission order.
void sort_diagnostics(std::vector<Diagnostic>& diags);

/// A value that is present only when no error-severity diagnostic was raised.
/// Warnings may accompany a present value.
template <class T>
struct Checked {
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return value.has_value(); }
};

}  // namespace sonia

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sonia/diagnostic.hpp"

namespace sonia::pack {

struct CsvRecord {
  std::size_t line = 0;  // line on which the record starts
  std::vector<std::string> fields;
};

/// Comma-separated, `"`-quoted (doubled quotes escape), UTF-8, LF or CRLF.
/// Blank lines are skipped. A leading UTF-8 BOM is dropped. Quoted fields may
/// span lines. Malformed quoting yields E_CSV_SYNTAX and no records.
Checked<std::vector<CsvRecord>> read_csv(std::string_view text, const std::string& file);

std::string csv_escape(std::string_view field);
std::string csv_row(const std::vector<std::string>& fields);

}  // namespace sonia::pack

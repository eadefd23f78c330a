#include "sonia/pack/csv.hpp"

namespace sonia::pack {

Checked<std::vector<CsvRecord>> read_csv(std::string_view text, const std::string& file) {
  Checked<std::vector<CsvRecord>> result;
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  std::vector<CsvRecord> records;
  CsvRecord current;
  std::string field;
  std::size_t line = 1;
  bool in_quotes = false;
  bool after_quote = false;  // just closed a quoted field
  bool record_open = false;
  std::size_t quote_line = 0;

  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    after_quote = false;
  };
  auto end_record = [&] {
    end_field();
    const bool blank = current.fields.size() == 1 && current.fields[0].empty();
    if (!blank) records.push_back(std::move(current));
    current = CsvRecord{};
    record_open = false;
  };
  auto fail = [&](std::size_t at, std::string msg) {
    result.diagnostics.push_back(make_diag(DiagCode::kCsvSyntax, file, at, std::move(msg)));
    return result;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (!record_open) {
      current.line = line;
      record_open = true;
    }
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
          after_quote = true;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty() || after_quote) {
          return fail(line, "unexpected quote inside unquoted field");
        }
        in_quotes = true;
        quote_line = line;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        return fail(line, "bare carriage return");
      case '\n':
        end_record();
        ++line;
        break;
      default:
        if (after_quote) return fail(line, "characters after closing quote");
        field += c;
    }
  }
  if (in_quotes) return fail(quote_line, "unterminated quoted field");
  if (record_open) end_record();

  result.value = std::move(records);
  return result;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    out += csv_escape(fields[i]);
  }
  out += '\n';
  return out;
}

}  // namespace sonia::pack

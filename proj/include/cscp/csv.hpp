#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cscp::csv {

/// Splits one CSV record. Double-quoted fields may contain commas and ""
/// escapes; unquoted fields are trimmed of surrounding spaces/tabs.
/// Returns nullopt for an unterminated quote or stray text after a
/// closing quote.
std::optional<std::vector<std::string>> split_line(std::string_view line);

/// Quotes a field when it holds a comma, quote, or leading/trailing blank.
std::string quote(std::string_view field);

/// Writes fields separated by commas and terminated by LF.
void write_row(std::ostream& out, std::span<const std::string> fields);

/// Reads the next line, stripping a trailing CR. Returns false at end of stream.
bool read_line(std::istream& in, std::string& line);

}  // namespace cscp::csv

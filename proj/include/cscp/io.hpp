#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace cscp::io {

/// Whole file as bytes. Throws IoError.
std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temp file, then renames over `path`. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view bytes);

/// Current UTC time as "2026-10-16T12:34:56Z".
std::string utc_timestamp();

}  // namespace cscp::io

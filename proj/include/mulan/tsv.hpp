#pragma once

// Small helpers shared by the TSV readers and writers.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mulan::tsv {

[[nodiscard]] std::vector<std::string_view> split(std::string_view line, char sep = '\t');

/// Strict parsers: the whole field must be consumed. Throw ParseError(line, ...).
[[nodiscard]] std::uint64_t parse_uint(std::string_view field, std::size_t line, std::string_view what);
[[nodiscard]] double parse_double(std::string_view field, std::size_t line, std::string_view what);

/// Shortest decimal form that round-trips (e.g. "0.9", "1").
[[nodiscard]] std::string format_shortest(double value);
/// Fixed-point with `digits` decimals, used by report tables.
[[nodiscard]] std::string format_fixed(double value, int digits);

/// Reads a whole file, split on LF. A CR before the LF is kept so that
/// callers can report it. Throws IoError with the path on failure.
[[nodiscard]] std::vector<std::string> read_lines(const std::filesystem::path& path);
/// Writes `content` to `path` verbatim, creating parent directories.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace mulan::tsv

#include "mulan/tsv.hpp"

#include <charconv>
#include <fstream>

#include <fmt/format.h>

#include "mulan/error.hpp"

namespace mulan::tsv {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::uint64_t parse_uint(std::string_view field, std::size_t line, std::string_view what) {
  std::uint64_t value = 0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc{} || ptr != end) {
    throw ParseError(line, fmt::format("bad {} '{}'", what, field));
  }
  return value;
}

double parse_double(std::string_view field, std::size_t line, std::string_view what) {
  double value = 0.0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc{} || ptr != end) {
    throw ParseError(line, fmt::format("bad {} '{}'", what, field));
  }
  return value;
}

std::string format_shortest(double value) { return fmt::format("{}", value); }

std::string format_fixed(double value, int digits) {
  // avoid "-0.000000" for tiny negative values
  std::string s = fmt::format("{:.{}f}", value, digits);
  if (s.starts_with('-') && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}' for reading", path.string()));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(std::move(line));
  if (in.bad()) throw IoError(fmt::format("read failure on '{}'", path.string()));
  return lines;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError(fmt::format("cannot create directory '{}': {}", path.parent_path().string(), ec.message()));
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError(fmt::format("write failure on '{}'", path.string()));
}

}  // namespace mulan::tsv

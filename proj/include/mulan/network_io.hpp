#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "mulan/network.hpp"

namespace mulan {

/// Parses the `#mulan-net v1` edge-list format. Lines after the header that
/// start with '#' are comments. Throws ParseError for malformed rows and
/// ValidationError (prefixed with the line number) for structural violations,
/// including duplicate edges.
[[nodiscard]] MultilayerNetwork parse_network(std::span<const std::string> lines);
[[nodiscard]] MultilayerNetwork load_network(const std::filesystem::path& path);

/// Canonical serialization: header, `comments` (each written as `#<comment>`),
/// intra rows by (layer, labels), inter rows by (layers, labels), then node
/// rows for nodes with no incident edge. Equal networks give equal bytes.
[[nodiscard]] std::string format_network(const MultilayerNetwork& net, std::span<const std::string> comments = {});
void save_network(const MultilayerNetwork& net, const std::filesystem::path& path,
                  std::span<const std::string> comments = {});

}  // namespace mulan

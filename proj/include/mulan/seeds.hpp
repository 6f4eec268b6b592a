#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "mulan/network.hpp"

namespace mulan {

/// One cross-network correspondence as read from a seed file, before it is
/// resolved against the two networks.
struct SeedPair {
  LayerIndex layer = 0;
  std::string node_a;  // label in the first network
  std::string node_b;  // label in the second network
  double similarity = 1.0;

  auto operator<=>(const SeedPair&) const = default;
};

using SeedPairs = std::vector<SeedPair>;

/// `#mulan-seeds v1` TSV: `<layer>\t<node_in_G1>\t<node_in_G2>\t<similarity>`.
[[nodiscard]] SeedPairs parse_seeds(std::span<const std::string> lines);
[[nodiscard]] SeedPairs load_seeds(const std::filesystem::path& path);
[[nodiscard]] std::string format_seeds(const SeedPairs& seeds);

/// Pairs every node with the equally-labelled node of the other network
/// (similarity 1). Throws LayerMismatch or ValidationError unless both networks
/// have the same layers and the same label set in each.
[[nodiscard]] SeedPairs identity_seeds(const MultilayerNetwork& a, const MultilayerNetwork& b);

}  // namespace mulan

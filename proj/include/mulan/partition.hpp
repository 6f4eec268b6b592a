#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "mulan/flat_graph.hpp"

namespace mulan {

enum class Detector : std::uint8_t { kLouvain, kGreedy, kInfomap };

[[nodiscard]] std::string_view to_string(Detector d);
/// Throws ValidationError for unknown names.
[[nodiscard]] Detector parse_detector(std::string_view name);

/// Hard, non-overlapping community assignment with ids 0..n_communities-1.
struct Partition {
  std::vector<std::uint32_t> assignment;
  std::uint32_t n_communities = 0;
  /// Objective of the detector, higher is better: modularity for Louvain and
  /// greedy, negated map-equation codelength (bits) for Infomap.
  double quality = 0.0;
  double modularity = 0.0;
  Detector algorithm = Detector::kLouvain;
  std::uint64_t rng_seed = 0;
};

/// Relabels arbitrary ids to 0..k-1 in order of first appearance; returns k.
std::uint32_t normalize_assignment(std::vector<std::uint32_t>& assignment);

/// Newman modularity with edge weights:
/// Q = sum_c [ in(c) / 2m - (tot(c) / 2m)^2 ], in(c) counting internal weight twice.
/// Throws EmptyGraph when the graph has zero total weight.
[[nodiscard]] double modularity(const WeightedFlatGraph& g, std::span<const std::uint32_t> assignment);

}  // namespace mulan

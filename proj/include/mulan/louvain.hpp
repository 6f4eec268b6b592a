#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "mulan/partition.hpp"

namespace mulan {

/// State at the end of one local-moving pass.
struct LouvainPass {
  unsigned level = 0;
  unsigned pass = 0;
  /// Modularity maintained incrementally from the per-move gains.
  double tracked_modularity = 0.0;
  /// Current community of every original node.
  std::span<const std::uint32_t> assignment;
};

struct LouvainOptions {
  /// A pass or level improving modularity by less than this ends the phase.
  double tolerance = 1e-7;
  std::function<void(const LouvainPass&)> observer;
};

/// Two-phase Louvain (local moves, then aggregation). Nodes are visited in a
/// seed-determined order; a node stays put unless some community beats its
/// own, and ties between candidate communities go to the lowest id.
/// Throws EmptyGraph.
[[nodiscard]] Partition louvain(const WeightedFlatGraph& g, std::uint64_t seed, const LouvainOptions& options = {});

}  // namespace mulan

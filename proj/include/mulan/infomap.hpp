#pragma once

#include <cstdint>
#include <span>

#include "mulan/partition.hpp"

namespace mulan {

/// Two-level map-equation codelength in bits,
///   L(M) = q H(Q) + sum_i p_i H(P_i),
/// with undirected random-walk visit rates (weighted degree / 2m) and no
/// teleportation. Throws EmptyGraph.
[[nodiscard]] double map_equation_codelength(const WeightedFlatGraph& g, std::span<const std::uint32_t> assignment);

struct InfomapOptions {
  /// A pass or level shortening the codelength by less than this (bits) ends the phase.
  double tolerance = 1e-7;
};

/// Minimises the two-level map equation with Louvain-style local moves and
/// aggregation. Partition::quality holds the negated codelength.
/// Throws EmptyGraph.
[[nodiscard]] Partition infomap_two_level(const WeightedFlatGraph& g, std::uint64_t seed,
                                          const InfomapOptions& options = {});

}  // namespace mulan

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mulan/flat_graph.hpp"
#include "mulan/greedy.hpp"
#include "mulan/infomap.hpp"
#include "mulan/louvain.hpp"
#include "mulan/mag.hpp"
#include "mulan/partition.hpp"

namespace mulan {

/// Runs the chosen back-end. `seed` is ignored by the deterministic greedy
/// detector but still recorded in the partition.
[[nodiscard]] Partition detect(const WeightedFlatGraph& g, Detector detector, std::uint64_t seed);

/// Communities file: optional `#` header, then
/// `<community_id>\t<layer>\t<a>|<b>` per MAG node, sorted by
/// (community, layer, labels).
[[nodiscard]] std::string format_communities(const Partition& p, const MultilayerAlignmentGraph& mag,
                                             const MultilayerNetwork& net_a, const MultilayerNetwork& net_b);

/// Community id per MAG node as read from a communities file; std::nullopt
/// for MAG nodes the file does not mention. Ids are renumbered 0..k-1.
/// Throws ParseError for malformed rows and ValidationError for rows naming
/// pairs that are not MAG nodes or naming one node twice.
[[nodiscard]] std::vector<std::optional<std::uint32_t>> parse_communities(std::span<const std::string> lines,
                                                                          const MultilayerAlignmentGraph& mag,
                                                                          const MultilayerNetwork& net_a,
                                                                          const MultilayerNetwork& net_b);

}  // namespace mulan

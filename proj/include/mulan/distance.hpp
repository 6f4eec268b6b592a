#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "mulan/network.hpp"

namespace mulan {

/// Hop distance within one layer, truncated at a cap. std::nullopt means
/// "beyond the cap" (longer path or disconnected).
using BoundedDistance = std::optional<unsigned>;

/// Reusable bounded breadth-first search over a single layer. Holds scratch
/// buffers, so one probe per thread.
class DistanceProbe {
 public:
  explicit DistanceProbe(const Layer& layer);

  /// Exact shortest-path length between u and v if it is <= cap.
  [[nodiscard]] BoundedDistance operator()(NodeIndex u, NodeIndex v, unsigned cap);

 private:
  bool expand(std::vector<NodeIndex>& frontier, std::vector<std::uint32_t>& own,
              const std::vector<std::uint32_t>& other);

  const Layer* layer_;
  std::vector<std::uint32_t> seen_from_u_;
  std::vector<std::uint32_t> seen_from_v_;
  std::vector<NodeIndex> frontier_u_;
  std::vector<NodeIndex> frontier_v_;
  std::vector<NodeIndex> next_;
  std::uint32_t epoch_ = 0;
};

/// Label-level entry point. Throws UnknownNode if either label is absent from
/// the layer, ValidationError if cap == 0.
[[nodiscard]] BoundedDistance bounded_distance(const MultilayerNetwork& net, LayerIndex layer, std::string_view u,
                                               std::string_view v, unsigned cap);

}  // namespace mulan

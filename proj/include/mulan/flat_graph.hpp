#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mulan {

class MultilayerAlignmentGraph;

struct WeightedEdge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  double weight = 0.0;
};

/// Undirected weighted graph in compressed adjacency form. Parallel edges are
/// merged by summing; an edge u == u is kept as a self-loop, which counts
/// twice towards its node's degree. Layer and kind information is gone.
class WeightedFlatGraph {
 public:
  struct Arc {
    std::uint32_t target;
    double weight;
  };

  WeightedFlatGraph() = default;
  WeightedFlatGraph(std::size_t node_count, std::span<const WeightedEdge> edges);

  [[nodiscard]] static WeightedFlatGraph from_mag(const MultilayerAlignmentGraph& mag);

  [[nodiscard]] std::size_t node_count() const noexcept { return loops_.size(); }
  /// Distinct non-loop edges.
  [[nodiscard]] std::size_t edge_count() const noexcept { return targets_.size() / 2; }
  [[nodiscard]] std::span<const std::uint32_t> neighbors(std::uint32_t u) const;
  [[nodiscard]] std::span<const double> weights(std::uint32_t u) const;
  [[nodiscard]] double loop(std::uint32_t u) const { return loops_[u]; }
  [[nodiscard]] double degree(std::uint32_t u) const { return degrees_[u]; }
  /// Sum of edge weights, loops once (m).
  [[nodiscard]] double total_weight() const noexcept { return total_weight_; }

  /// Contracts each community into one node: internal weight becomes a loop,
  /// crossing weight is summed per community pair. `assignment` must use ids
  /// 0..community_count-1.
  [[nodiscard]] WeightedFlatGraph aggregate(std::span<const std::uint32_t> assignment,
                                            std::uint32_t community_count) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> targets_;
  std::vector<double> arc_weights_;
  std::vector<double> loops_;
  std::vector<double> degrees_;
  double total_weight_ = 0.0;
};

}  // namespace mulan

#include "mulan/flat_graph.hpp"

#include <algorithm>
#include <numeric>

#include "mulan/error.hpp"
#include "mulan/mag.hpp"

namespace mulan {

WeightedFlatGraph::WeightedFlatGraph(std::size_t node_count, std::span<const WeightedEdge> edges)
    : loops_(node_count, 0.0), degrees_(node_count, 0.0) {
  // (lo, hi, weight) with lo < hi, sorted so that parallel edges are adjacent
  std::vector<WeightedEdge> normalized;
  normalized.reserve(edges.size());
  for (const WeightedEdge& e : edges) {
    if (e.u >= node_count || e.v >= node_count) throw InternalError("edge endpoint out of range");
    if (e.u == e.v) {
      loops_[e.u] += e.weight;
    } else {
      normalized.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.weight});
    }
  }
  std::stable_sort(normalized.begin(), normalized.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  std::vector<WeightedEdge> merged;
  for (const WeightedEdge& e : normalized) {
    if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v) {
      merged.back().weight += e.weight;
    } else {
      merged.push_back(e);
    }
  }

  std::vector<std::size_t> counts(node_count + 1, 0);
  for (const WeightedEdge& e : merged) {
    ++counts[e.u + 1];
    ++counts[e.v + 1];
  }
  offsets_.assign(node_count + 1, 0);
  std::partial_sum(counts.begin(), counts.end(), offsets_.begin());
  targets_.resize(2 * merged.size());
  arc_weights_.resize(2 * merged.size());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  // merged is sorted by (u, v): filling the smaller-id side first leaves every
  // adjacency list sorted by target
  for (const WeightedEdge& e : merged) {
    targets_[cursor[e.v]] = e.u;
    arc_weights_[cursor[e.v]++] = e.weight;
  }
  for (const WeightedEdge& e : merged) {
    targets_[cursor[e.u]] = e.v;
    arc_weights_[cursor[e.u]++] = e.weight;
  }

  for (std::size_t u = 0; u < node_count; ++u) {
    double d = 2.0 * loops_[u];
    for (std::size_t i = offsets_[u]; i < offsets_[u + 1]; ++i) d += arc_weights_[i];
    degrees_[u] = d;
    total_weight_ += loops_[u];
  }
  for (const WeightedEdge& e : merged) total_weight_ += e.weight;
}

WeightedFlatGraph WeightedFlatGraph::from_mag(const MultilayerAlignmentGraph& mag) {
  std::vector<WeightedEdge> edges;
  edges.reserve(mag.edges().size());
  for (const MagEdge& e : mag.edges()) edges.push_back({e.u, e.v, e.weight});
  return WeightedFlatGraph(mag.nodes().size(), edges);
}

std::span<const std::uint32_t> WeightedFlatGraph::neighbors(std::uint32_t u) const {
  return std::span<const std::uint32_t>(targets_).subspan(offsets_[u], offsets_[u + 1] - offsets_[u]);
}

std::span<const double> WeightedFlatGraph::weights(std::uint32_t u) const {
  return std::span<const double>(arc_weights_).subspan(offsets_[u], offsets_[u + 1] - offsets_[u]);
}

WeightedFlatGraph WeightedFlatGraph::aggregate(std::span<const std::uint32_t> assignment,
                                               std::uint32_t community_count) const {
  if (assignment.size() != node_count()) throw InternalError("assignment size mismatch");
  std::vector<WeightedEdge> edges;
  edges.reserve(edge_count() + node_count());
  for (std::uint32_t u = 0; u < node_count(); ++u) {
    const std::uint32_t cu = assignment[u];
    if (cu >= community_count) throw InternalError("community id out of range");
    if (loops_[u] != 0.0) edges.push_back({cu, cu, loops_[u]});
    const auto nb = neighbors(u);
    const auto w = weights(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (nb[i] > u) edges.push_back({cu, assignment[nb[i]], w[i]});
    }
  }
  return WeightedFlatGraph(community_count, edges);
}

}  // namespace mulan

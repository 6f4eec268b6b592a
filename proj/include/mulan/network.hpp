#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace mulan {

using LayerIndex = std::uint32_t;
using NodeIndex = std::uint32_t;

/// A node addressed by its layer; labels are namespaced per layer.
struct NodeRef {
  LayerIndex layer = 0;
  NodeIndex node = 0;
  auto operator<=>(const NodeRef&) const = default;
};

/// Undirected intra-layer edge, stored with u < v.
struct IntraEdge {
  NodeIndex u = 0;
  NodeIndex v = 0;
  auto operator<=>(const IntraEdge&) const = default;
};

/// Undirected inter-layer edge, stored with a.layer < b.layer.
struct InterEdge {
  NodeRef a;
  NodeRef b;
  auto operator<=>(const InterEdge&) const = default;
};

/// Throws ValidationError unless `label` is non-empty and free of tab, CR and LF.
void validate_label(std::string_view label);

class NetworkBuilder;

/// One layer of a multilayer network. Node indices follow lexicographic label
/// order, so two structurally equal layers compare equal member-wise.
class Layer {
 public:
  [[nodiscard]] std::size_t node_count() const noexcept { return labels_.size(); }
  [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
  [[nodiscard]] const std::string& label(NodeIndex n) const { return labels_.at(n); }
  [[nodiscard]] std::span<const std::string> labels() const noexcept { return labels_; }
  [[nodiscard]] std::optional<NodeIndex> find(std::string_view label) const;
  [[nodiscard]] std::span<const NodeIndex> neighbors(NodeIndex n) const { return adjacency_.at(n); }
  [[nodiscard]] std::size_t degree(NodeIndex n) const { return adjacency_.at(n).size(); }
  [[nodiscard]] bool has_edge(NodeIndex u, NodeIndex v) const;
  [[nodiscard]] std::span<const IntraEdge> edges() const noexcept { return edges_; }

  bool operator==(const Layer& other) const {
    return labels_ == other.labels_ && edges_ == other.edges_;
  }

 private:
  friend class NetworkBuilder;

  std::vector<std::string> labels_;
  std::vector<std::vector<NodeIndex>> adjacency_;
  std::vector<IntraEdge> edges_;
};

/// Undirected, unweighted multilayer network. Immutable once built; construct
/// through NetworkBuilder or load_network().
class MultilayerNetwork {
 public:
  MultilayerNetwork() = default;

  [[nodiscard]] std::size_t layer_count() const noexcept { return layers_.size(); }
  [[nodiscard]] const Layer& layer(LayerIndex l) const { return layers_.at(l); }

  [[nodiscard]] std::optional<NodeIndex> find(LayerIndex l, std::string_view label) const;
  /// Like find(), but throws UnknownNode.
  [[nodiscard]] NodeIndex require(LayerIndex l, std::string_view label) const;
  [[nodiscard]] const std::string& label(NodeRef n) const { return layer(n.layer).label(n.node); }

  [[nodiscard]] std::size_t node_count() const noexcept;
  [[nodiscard]] std::size_t intra_edge_count() const noexcept;
  [[nodiscard]] std::size_t inter_edge_count() const noexcept { return inter_edges_.size(); }
  [[nodiscard]] std::size_t edge_count() const noexcept { return intra_edge_count() + inter_edge_count(); }

  [[nodiscard]] std::span<const InterEdge> inter_edges() const noexcept { return inter_edges_; }
  [[nodiscard]] bool has_inter_edge(NodeRef x, NodeRef y) const;
  [[nodiscard]] std::size_t inter_degree(NodeRef n) const;

  bool operator==(const MultilayerNetwork&) const = default;

 private:
  friend class NetworkBuilder;

  std::vector<Layer> layers_;
  std::vector<InterEdge> inter_edges_;
  std::vector<std::vector<std::uint32_t>> inter_degree_;
};

/// Accumulates labelled nodes and edges, validating each insertion, then
/// produces a canonical MultilayerNetwork.
class NetworkBuilder {
 public:
  explicit NetworkBuilder(std::size_t layer_count);

  [[nodiscard]] std::size_t layer_count() const noexcept { return layers_.size(); }

  /// Returns false if the node was already present.
  bool add_node(LayerIndex layer, std::string_view label);
  /// Returns false (and changes nothing) if the edge already exists.
  /// Throws ValidationError on self-loops or out-of-range layers.
  bool add_intra_edge(LayerIndex layer, std::string_view u, std::string_view v);
  /// Returns false if the edge already exists in either orientation.
  /// Throws ValidationError if both endpoints lie in the same layer.
  bool add_inter_edge(LayerIndex layer_a, std::string_view a, LayerIndex layer_b, std::string_view b);

  [[nodiscard]] MultilayerNetwork build() const;

 private:
  struct PendingLayer {
    std::vector<std::string> labels;
    std::unordered_map<std::string, NodeIndex> index;
    std::unordered_set<std::uint64_t> edges;
  };

  NodeIndex intern(LayerIndex layer, std::string_view label);
  void check_layer(LayerIndex layer) const;

  std::vector<PendingLayer> layers_;
  std::set<InterEdge> inter_;  // pending ids, canonical orientation
};

/// Rebuilds `net` keeping every node but only the edges for which `keep`
/// holds. Edge ordinals follow the canonical order: intra edges layer by layer,
/// then inter edges.
template <typename Keep>
MultilayerNetwork filter_edges(const MultilayerNetwork& net, Keep&& keep) {
  NetworkBuilder b(net.layer_count());
  std::size_t ordinal = 0;
  for (LayerIndex l = 0; l < net.layer_count(); ++l) {
    const Layer& layer = net.layer(l);
    for (const auto& label : layer.labels()) b.add_node(l, label);
    for (const IntraEdge& e : layer.edges()) {
      if (keep(ordinal++)) b.add_intra_edge(l, layer.label(e.u), layer.label(e.v));
    }
  }
  for (const InterEdge& e : net.inter_edges()) {
    if (keep(ordinal++)) b.add_inter_edge(e.a.layer, net.label(e.a), e.b.layer, net.label(e.b));
  }
  return b.build();
}

}  // namespace mulan

#include "mulan/network.hpp"

#include <algorithm>
#include <numeric>

#include "mulan/error.hpp"

namespace mulan {

namespace {

std::uint64_t pair_key(NodeIndex u, NodeIndex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

void validate_label(std::string_view label) {
  if (label.empty()) throw ValidationError("empty node label");
  if (label.find_first_of("\t\r\n") != std::string_view::npos) {
    throw ValidationError("node label contains a tab or line break: '" + std::string(label) + "'");
  }
}

std::optional<NodeIndex> Layer::find(std::string_view label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<NodeIndex>(it - labels_.begin());
}

bool Layer::has_edge(NodeIndex u, NodeIndex v) const {
  const auto& nu = adjacency_.at(u);
  const auto& nv = adjacency_.at(v);
  if (nu.size() <= nv.size()) return std::binary_search(nu.begin(), nu.end(), v);
  return std::binary_search(nv.begin(), nv.end(), u);
}

std::optional<NodeIndex> MultilayerNetwork::find(LayerIndex l, std::string_view label) const {
  if (l >= layers_.size()) return std::nullopt;
  return layers_[l].find(label);
}

NodeIndex MultilayerNetwork::require(LayerIndex l, std::string_view label) const {
  auto n = find(l, label);
  if (!n) throw UnknownNode("'" + std::string(label) + "' in layer " + std::to_string(l));
  return *n;
}

std::size_t MultilayerNetwork::node_count() const noexcept {
  return std::accumulate(layers_.begin(), layers_.end(), std::size_t{0},
                         [](std::size_t acc, const Layer& l) { return acc + l.node_count(); });
}

std::size_t MultilayerNetwork::intra_edge_count() const noexcept {
  return std::accumulate(layers_.begin(), layers_.end(), std::size_t{0},
                         [](std::size_t acc, const Layer& l) { return acc + l.edge_count(); });
}

bool MultilayerNetwork::has_inter_edge(NodeRef x, NodeRef y) const {
  if (x.layer == y.layer) return false;
  if (y.layer < x.layer) std::swap(x, y);
  return std::binary_search(inter_edges_.begin(), inter_edges_.end(), InterEdge{x, y});
}

std::size_t MultilayerNetwork::inter_degree(NodeRef n) const {
  return inter_degree_.at(n.layer).at(n.node);
}

NetworkBuilder::NetworkBuilder(std::size_t layer_count) : layers_(layer_count) {}

void NetworkBuilder::check_layer(LayerIndex layer) const {
  if (layer >= layers_.size()) {
    throw ValidationError("layer " + std::to_string(layer) + " out of range (network has " +
                          std::to_string(layers_.size()) + " layers)");
  }
}

NodeIndex NetworkBuilder::intern(LayerIndex layer, std::string_view label) {
  check_layer(layer);
  auto& pl = layers_[layer];
  auto it = pl.index.find(std::string(label));
  if (it != pl.index.end()) return it->second;
  validate_label(label);
  const auto id = static_cast<NodeIndex>(pl.labels.size());
  pl.labels.emplace_back(label);
  pl.index.emplace(std::string(label), id);
  return id;
}

bool NetworkBuilder::add_node(LayerIndex layer, std::string_view label) {
  check_layer(layer);
  const auto before = layers_[layer].labels.size();
  intern(layer, label);
  return layers_[layer].labels.size() != before;
}

bool NetworkBuilder::add_intra_edge(LayerIndex layer, std::string_view u, std::string_view v) {
  check_layer(layer);
  if (u == v) throw ValidationError("self-loop on '" + std::string(u) + "' in layer " + std::to_string(layer));
  const NodeIndex iu = intern(layer, u);
  const NodeIndex iv = intern(layer, v);
  return layers_[layer].edges.insert(pair_key(iu, iv)).second;
}

bool NetworkBuilder::add_inter_edge(LayerIndex layer_a, std::string_view a, LayerIndex layer_b,
                                    std::string_view b) {
  check_layer(layer_a);
  check_layer(layer_b);
  if (layer_a == layer_b) {
    throw ValidationError("inter edge '" + std::string(a) + "'-'" + std::string(b) + "' stays within layer " +
                          std::to_string(layer_a));
  }
  NodeRef x{layer_a, intern(layer_a, a)};
  NodeRef y{layer_b, intern(layer_b, b)};
  if (y.layer < x.layer) std::swap(x, y);
  return inter_.insert(InterEdge{x, y}).second;
}

MultilayerNetwork NetworkBuilder::build() const {
  MultilayerNetwork net;
  net.layers_.resize(layers_.size());
  // pending id -> canonical (label-sorted) id, per layer
  std::vector<std::vector<NodeIndex>> remap(layers_.size());

  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const PendingLayer& pl = layers_[l];
    Layer& out = net.layers_[l];
    const std::size_t n = pl.labels.size();

    std::vector<NodeIndex> order(n);
    std::iota(order.begin(), order.end(), NodeIndex{0});
    std::sort(order.begin(), order.end(), [&](NodeIndex a, NodeIndex b) { return pl.labels[a] < pl.labels[b]; });

    remap[l].resize(n);
    out.labels_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      remap[l][order[i]] = static_cast<NodeIndex>(i);
      out.labels_.push_back(pl.labels[order[i]]);
    }

    out.edges_.reserve(pl.edges.size());
    for (std::uint64_t key : pl.edges) {
      NodeIndex u = remap[l][static_cast<NodeIndex>(key >> 32)];
      NodeIndex v = remap[l][static_cast<NodeIndex>(key & 0xffffffffU)];
      if (u > v) std::swap(u, v);
      out.edges_.push_back({u, v});
    }
    std::sort(out.edges_.begin(), out.edges_.end());

    out.adjacency_.assign(n, {});
    for (const IntraEdge& e : out.edges_) {
      out.adjacency_[e.u].push_back(e.v);
      out.adjacency_[e.v].push_back(e.u);
    }
    for (auto& adj : out.adjacency_) std::sort(adj.begin(), adj.end());
  }

  net.inter_degree_.resize(layers_.size());
  for (std::size_t l = 0; l < layers_.size(); ++l) net.inter_degree_[l].assign(layers_[l].labels.size(), 0);

  net.inter_edges_.reserve(inter_.size());
  for (const InterEdge& e : inter_) {
    InterEdge c{{e.a.layer, remap[e.a.layer][e.a.node]}, {e.b.layer, remap[e.b.layer][e.b.node]}};
    net.inter_edges_.push_back(c);
    ++net.inter_degree_[c.a.layer][c.a.node];
    ++net.inter_degree_[c.b.layer][c.b.node];
  }
  std::sort(net.inter_edges_.begin(), net.inter_edges_.end());
  return net;
}

}  // namespace mulan

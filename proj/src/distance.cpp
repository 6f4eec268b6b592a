#include "mulan/distance.hpp"

#include <algorithm>

#include "mulan/error.hpp"

namespace mulan {

DistanceProbe::DistanceProbe(const Layer& layer)
    : layer_(&layer), seen_from_u_(layer.node_count(), 0), seen_from_v_(layer.node_count(), 0) {}

// Expands `frontier` by one level. Returns true as soon as it touches a node
// the other side has already reached.
bool DistanceProbe::expand(std::vector<NodeIndex>& frontier, std::vector<std::uint32_t>& own,
                           const std::vector<std::uint32_t>& other) {
  next_.clear();
  for (NodeIndex x : frontier) {
    for (NodeIndex y : layer_->neighbors(x)) {
      if (other[y] == epoch_) return true;
      if (own[y] != epoch_) {
        own[y] = epoch_;
        next_.push_back(y);
      }
    }
  }
  frontier.swap(next_);
  return false;
}

BoundedDistance DistanceProbe::operator()(NodeIndex u, NodeIndex v, unsigned cap) {
  if (u >= layer_->node_count() || v >= layer_->node_count()) {
    throw UnknownNode("node index out of range");
  }
  if (u == v) return 0U;

  if (++epoch_ == 0) {
    std::fill(seen_from_u_.begin(), seen_from_u_.end(), 0);
    std::fill(seen_from_v_.begin(), seen_from_v_.end(), 0);
    epoch_ = 1;
  }
  seen_from_u_[u] = epoch_;
  seen_from_v_[v] = epoch_;
  frontier_u_.assign(1, u);
  frontier_v_.assign(1, v);

  // Invariant: no node is marked by both sides and every path of length
  // <= depth has been ruled out, so the first meeting is at depth + 1.
  for (unsigned depth = 0; depth < cap; ++depth) {
    const bool from_u = frontier_u_.size() <= frontier_v_.size();
    const bool met = from_u ? expand(frontier_u_, seen_from_u_, seen_from_v_)
                            : expand(frontier_v_, seen_from_v_, seen_from_u_);
    if (met) return depth + 1;
    if (frontier_u_.empty() || frontier_v_.empty()) return std::nullopt;
  }
  return std::nullopt;
}

BoundedDistance bounded_distance(const MultilayerNetwork& net, LayerIndex layer, std::string_view u,
                                 std::string_view v, unsigned cap) {
  if (cap == 0) throw ValidationError("distance cap must be >= 1");
  const NodeIndex iu = net.require(layer, u);
  const NodeIndex iv = net.require(layer, v);
  DistanceProbe probe(net.layer(layer));
  return probe(iu, iv, cap);
}

}  // namespace mulan

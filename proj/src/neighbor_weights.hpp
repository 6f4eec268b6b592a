#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "mulan/flat_graph.hpp"

namespace mulan::detail {

/// Sparse accumulator of the edge weight from one node to each adjacent
/// community. `touched` lists communities with an entry, ascending after gather().
class NeighborWeights {
 public:
  explicit NeighborWeights(std::size_t communities) : weight_(communities, 0.0), present_(communities, 0) {}

  void gather(const WeightedFlatGraph& g, std::uint32_t node, const std::vector<std::uint32_t>& community) {
    for (std::uint32_t c : touched_) {
      weight_[c] = 0.0;
      present_[c] = 0;
    }
    touched_.clear();
    const auto nb = g.neighbors(node);
    const auto w = g.weights(node);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const std::uint32_t c = community[nb[i]];
      if (!present_[c]) {
        present_[c] = 1;
        touched_.push_back(c);
      }
      weight_[c] += w[i];
    }
    std::sort(touched_.begin(), touched_.end());
  }

  [[nodiscard]] double operator[](std::uint32_t c) const { return weight_[c]; }
  [[nodiscard]] const std::vector<std::uint32_t>& touched() const { return touched_; }

 private:
  std::vector<double> weight_;
  std::vector<char> present_;
  std::vector<std::uint32_t> touched_;
};

}  // namespace mulan::detail

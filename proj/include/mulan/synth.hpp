#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mulan/network.hpp"
#include "mulan/rng.hpp"

namespace mulan {

/// Parameters of a synthetic multilayer benchmark network: `n_layers`
/// Barabási–Albert layers of `n` nodes each, with inter-layer edges between
/// consecutive layers amounting to `inter_fraction` of one layer's edge count.
struct SynthSpec {
  std::uint32_t n_layers = 2;
  std::uint32_t n = 1000;
  std::uint32_t m = 1;
  double inter_fraction = 0.30;
  std::uint64_t rng_seed = 0;

  /// Throws InvalidSpec.
  void validate() const;
  /// Compact `key=value,...` form used in the `#gen` comment row.
  [[nodiscard]] std::string describe() const;
};

/// Edge-removal noise: removes floor(fraction * |E|) edges drawn uniformly
/// from the pooled intra + inter edge set.
struct NoiseSpec {
  double fraction = 0.0;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

/// Zero-padded label for node `i` of an `n`-node synthetic layer.
[[nodiscard]] std::string synth_label(std::uint32_t i, std::uint32_t n);

/// Preferential-attachment graph on nodes 0..n-1; yields (n - m) * m edges.
/// Throws InvalidSpec unless 1 <= m < n.
[[nodiscard]] std::vector<IntraEdge> generate_ba_layer(std::uint32_t n, std::uint32_t m, Rng& rng);

[[nodiscard]] MultilayerNetwork generate_multilayer(const SynthSpec& spec);

/// Number of edges perturb() removes from a network with `edges` edges.
[[nodiscard]] std::size_t removal_count(std::size_t edges, double fraction);

/// Canonical edge ordinals (see filter_edges) selected for removal, sorted.
[[nodiscard]] std::vector<std::size_t> sample_removed_edges(const MultilayerNetwork& net, const NoiseSpec& noise);

[[nodiscard]] MultilayerNetwork perturb(const MultilayerNetwork& net, const NoiseSpec& noise);

}  // namespace mulan

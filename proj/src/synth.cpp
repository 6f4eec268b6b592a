#include "mulan/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "mulan/error.hpp"

namespace mulan {

namespace {

// Stream ids for Rng::derive; layers use their index directly.
constexpr std::uint64_t kInterStreamBase = 1ULL << 32;

}  // namespace

void SynthSpec::validate() const {
  if (n_layers < 1) throw InvalidSpec("need at least one layer");
  if (m < 1 || m >= n) throw InvalidSpec(fmt::format("BA attachment count m={} must satisfy 1 <= m < n={}", m, n));
  if (!(inter_fraction >= 0.0 && inter_fraction <= 1.0)) {
    throw InvalidSpec(fmt::format("inter fraction {} outside [0, 1]", inter_fraction));
  }
}

std::string SynthSpec::describe() const {
  return fmt::format("layers={},n={},m={},inter={}", n_layers, n, m, inter_fraction);
}

void NoiseSpec::validate() const {
  if (!(fraction >= 0.0 && fraction < 1.0)) {
    throw InvalidSpec(fmt::format("noise fraction {} outside [0, 1)", fraction));
  }
}

std::string synth_label(std::uint32_t i, std::uint32_t n) {
  const auto width = std::to_string(n > 0 ? n - 1 : 0).size();
  return fmt::format("n{:0{}}", i, width);
}

std::vector<IntraEdge> generate_ba_layer(std::uint32_t n, std::uint32_t m, Rng& rng) {
  if (m < 1 || m >= n) throw InvalidSpec(fmt::format("BA attachment count m={} must satisfy 1 <= m < n={}", m, n));

  std::vector<IntraEdge> edges;
  edges.reserve(static_cast<std::size_t>(n - m) * m);
  // every node appears once per unit of degree
  std::vector<NodeIndex> repeated;
  repeated.reserve(2 * static_cast<std::size_t>(n - m) * m);

  std::vector<NodeIndex> targets(m);
  std::iota(targets.begin(), targets.end(), NodeIndex{0});
  std::vector<char> picked(n, 0);

  for (NodeIndex source = m; source < n; ++source) {
    if (source > m) {
      targets.clear();
      while (targets.size() < m) {
        const NodeIndex t = repeated[rng.below(repeated.size())];
        if (!picked[t]) {
          picked[t] = 1;
          targets.push_back(t);
        }
      }
      for (NodeIndex t : targets) picked[t] = 0;
    }
    for (NodeIndex t : targets) {
      edges.push_back({std::min(t, source), std::max(t, source)});
      repeated.push_back(t);
      repeated.push_back(source);
    }
  }
  return edges;
}

MultilayerNetwork generate_multilayer(const SynthSpec& spec) {
  spec.validate();
  NetworkBuilder builder(spec.n_layers);
  std::vector<std::string> labels(spec.n);
  for (std::uint32_t i = 0; i < spec.n; ++i) labels[i] = synth_label(i, spec.n);

  std::size_t per_layer_edges = 0;
  for (LayerIndex l = 0; l < spec.n_layers; ++l) {
    Rng rng(Rng::derive(spec.rng_seed, l));
    const auto edges = generate_ba_layer(spec.n, spec.m, rng);
    per_layer_edges = edges.size();
    for (const auto& label : labels) builder.add_node(l, label);
    for (const IntraEdge& e : edges) builder.add_intra_edge(l, labels[e.u], labels[e.v]);
  }

  const auto inter_count = static_cast<std::uint64_t>(std::llround(spec.inter_fraction * per_layer_edges));
  if (inter_count > static_cast<std::uint64_t>(spec.n) * spec.n) {
    throw InvalidSpec(fmt::format("{} inter edges do not fit between two layers of {} nodes", inter_count, spec.n));
  }
  for (LayerIndex l = 0; l + 1 < spec.n_layers; ++l) {
    Rng rng(Rng::derive(spec.rng_seed, kInterStreamBase + l));
    std::uint64_t added = 0;
    while (added < inter_count) {
      const auto a = static_cast<std::uint32_t>(rng.below(spec.n));
      const auto b = static_cast<std::uint32_t>(rng.below(spec.n));
      if (builder.add_inter_edge(l, labels[a], l + 1, labels[b])) ++added;
    }
  }
  return builder.build();
}

std::size_t removal_count(std::size_t edges, double fraction) {
  // The relative nudge keeps products such as 0.29 * 100 from flooring to 28.
  const double x = fraction * static_cast<double>(edges) * (1.0 + 1e-12);
  return std::min(edges, static_cast<std::size_t>(std::floor(x)));
}

std::vector<std::size_t> sample_removed_edges(const MultilayerNetwork& net, const NoiseSpec& noise) {
  noise.validate();
  const std::size_t total = net.edge_count();
  const std::size_t k = removal_count(total, noise.fraction);
  std::vector<std::size_t> ordinals(total);
  std::iota(ordinals.begin(), ordinals.end(), std::size_t{0});
  Rng rng(noise.rng_seed);
  // partial Fisher-Yates: the first k slots are a uniform k-subset
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(ordinals[i], ordinals[i + rng.below(total - i)]);
  }
  ordinals.resize(k);
  std::sort(ordinals.begin(), ordinals.end());
  return ordinals;
}

MultilayerNetwork perturb(const MultilayerNetwork& net, const NoiseSpec& noise) {
  const auto removed = sample_removed_edges(net, noise);
  std::vector<char> drop(net.edge_count(), 0);
  for (std::size_t o : removed) drop[o] = 1;
  return filter_edges(net, [&](std::size_t ordinal) { return !drop[ordinal]; });
}

}  // namespace mulan

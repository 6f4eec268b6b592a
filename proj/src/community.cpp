#include "mulan/community.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <fmt/format.h>

#include "mulan/error.hpp"
#include "mulan/tsv.hpp"

namespace mulan {

std::string_view to_string(Detector d) {
  switch (d) {
    case Detector::kLouvain: return "louvain";
    case Detector::kGreedy: return "greedy";
    case Detector::kInfomap: return "infomap";
  }
  return "?";
}

Detector parse_detector(std::string_view name) {
  if (name == "louvain") return Detector::kLouvain;
  if (name == "greedy") return Detector::kGreedy;
  if (name == "infomap") return Detector::kInfomap;
  throw ValidationError(fmt::format("unknown detector '{}' (expected louvain, greedy or infomap)", name));
}

std::uint32_t normalize_assignment(std::vector<std::uint32_t>& assignment) {
  std::map<std::uint32_t, std::uint32_t> relabel;
  for (auto& c : assignment) {
    auto [it, inserted] = relabel.try_emplace(c, static_cast<std::uint32_t>(relabel.size()));
    c = it->second;
  }
  return static_cast<std::uint32_t>(relabel.size());
}

double modularity(const WeightedFlatGraph& g, std::span<const std::uint32_t> assignment) {
  if (!(g.total_weight() > 0.0)) throw EmptyGraph();
  if (assignment.size() != g.node_count()) throw InternalError("assignment does not cover the graph");
  const std::uint32_t k = assignment.empty() ? 0 : *std::max_element(assignment.begin(), assignment.end()) + 1;
  std::vector<double> internal(k, 0.0), tot(k, 0.0);
  for (std::uint32_t u = 0; u < g.node_count(); ++u) {
    const std::uint32_t c = assignment[u];
    tot[c] += g.degree(u);
    internal[c] += g.loop(u);
    const auto nb = g.neighbors(u);
    const auto w = g.weights(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (nb[i] > u && assignment[nb[i]] == c) internal[c] += w[i];
    }
  }
  const double two_m = 2.0 * g.total_weight();
  double q = 0.0;
  for (std::uint32_t c = 0; c < k; ++c) {
    const double share = tot[c] / two_m;
    q += 2.0 * internal[c] / two_m - share * share;
  }
  return q;
}

Partition detect(const WeightedFlatGraph& g, Detector detector, std::uint64_t seed) {
  switch (detector) {
    case Detector::kLouvain: return louvain(g, seed);
    case Detector::kInfomap: return infomap_two_level(g, seed);
    case Detector::kGreedy: {
      Partition p = greedy_cnm(g);
      p.rng_seed = seed;
      return p;
    }
  }
  throw InternalError("unknown detector");
}

std::string format_communities(const Partition& p, const MultilayerAlignmentGraph& mag,
                               const MultilayerNetwork& net_a, const MultilayerNetwork& net_b) {
  if (p.assignment.size() != mag.nodes().size()) throw InternalError("partition does not cover the MAG");
  std::string out = fmt::format("#mulan-communities v1 detector={} seed={} communities={}\n",
                                to_string(p.algorithm), p.rng_seed, p.n_communities);
  std::vector<MagNodeId> order(p.assignment.size());
  std::iota(order.begin(), order.end(), MagNodeId{0});
  // MAG node ids already follow (layer, labels) order
  std::stable_sort(order.begin(), order.end(),
                   [&](MagNodeId x, MagNodeId y) { return p.assignment[x] < p.assignment[y]; });
  for (MagNodeId id : order) {
    const MagNode& node = mag.node(id);
    out += fmt::format("{}\t{}\t{}\n", p.assignment[id], node.layer, pair_label(net_a, net_b, node));
  }
  return out;
}

std::vector<std::optional<std::uint32_t>> parse_communities(std::span<const std::string> lines,
                                                            const MultilayerAlignmentGraph& mag,
                                                            const MultilayerNetwork& net_a,
                                                            const MultilayerNetwork& net_b) {
  const auto nodes = mag.nodes();
  std::vector<std::optional<std::uint32_t>> community(nodes.size());
  std::map<std::uint64_t, std::uint32_t> relabel;

  // Labels may themselves contain '|', so try every split point and keep the
  // one that names an unassigned MAG node.
  auto resolve = [&](LayerIndex layer, std::string_view pair) -> std::optional<MagNodeId> {
    for (std::size_t pos = pair.find('|'); pos != std::string_view::npos; pos = pair.find('|', pos + 1)) {
      const auto a = net_a.find(layer, pair.substr(0, pos));
      const auto b = net_b.find(layer, pair.substr(pos + 1));
      if (!a || !b) continue;
      auto it = std::lower_bound(nodes.begin(), nodes.end(), MagNode{layer, *a, *b, 0.0});
      for (; it != nodes.end() && it->layer == layer && it->a == *a && it->b == *b; ++it) {
        const auto id = static_cast<MagNodeId>(it - nodes.begin());
        if (!community[id]) return id;
      }
    }
    return std::nullopt;
  };

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    std::string_view line = lines[i];
    if (line.starts_with('#')) continue;
    if (line.ends_with('\r')) throw ParseError(lineno, "CR line ending (expected LF)");
    if (line.empty()) throw ParseError(lineno, "empty line");
    const auto f = tsv::split(line);
    if (f.size() != 3) throw ParseError(lineno, fmt::format("expected 3 tab-separated fields, got {}", f.size()));
    const auto raw_id = tsv::parse_uint(f[0], lineno, "community id");
    const auto layer = static_cast<LayerIndex>(tsv::parse_uint(f[1], lineno, "layer index"));
    if (f[2].find('|') == std::string_view::npos) throw ParseError(lineno, "pair must be written as '<a>|<b>'");
    const auto id = resolve(layer, f[2]);
    if (!id) {
      throw ValidationError(
          fmt::format("line {}: '{}' in layer {} is not an alignment-graph node (or is listed twice)", lineno, f[2],
                      layer));
    }
    auto [it, inserted] = relabel.try_emplace(raw_id, static_cast<std::uint32_t>(relabel.size()));
    community[*id] = it->second;
  }
  return community;
}

}  // namespace mulan

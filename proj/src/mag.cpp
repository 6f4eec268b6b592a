#include "mulan/mag.hpp"

#include <algorithm>
#include <charconv>
#include <thread>

#include <fmt/format.h>

#include "mulan/error.hpp"
#include "mulan/tsv.hpp"

namespace mulan {

namespace {

using NodeBuckets = std::vector<std::vector<MagNodeId>>;

std::uint64_t pair_key(MagNodeId p, MagNodeId q) {
  if (p > q) std::swap(p, q);
  return (static_cast<std::uint64_t>(p) << 32) | q;
}

// Appends every MAG node pair (p, q) whose components along one network are
// the endpoints of an edge of that network.
void collect_candidates(std::span<const MagNodeId> left, std::span<const MagNodeId> right,
                        std::vector<std::uint64_t>& out) {
  for (MagNodeId p : left) {
    for (MagNodeId q : right) {
      if (p != q) out.push_back(pair_key(p, q));
    }
  }
}

void sort_unique(std::vector<std::uint64_t>& keys) {
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
}

}  // namespace

std::string_view to_string(MagEdgeKind kind) {
  switch (kind) {
    case MagEdgeKind::kHomMatch: return "hom_match";
    case MagEdgeKind::kHomMismatch: return "hom_mismatch";
    case MagEdgeKind::kHomGap: return "hom_gap";
    case MagEdgeKind::kHetMatch: return "het_match";
    case MagEdgeKind::kHetMismatch: return "het_mismatch";
  }
  return "?";
}

bool is_homogeneous(MagEdgeKind kind) {
  return kind == MagEdgeKind::kHomMatch || kind == MagEdgeKind::kHomMismatch || kind == MagEdgeKind::kHomGap;
}

void AlignmentParams::validate() const {
  if (delta < 1) throw ValidationError("delta must be >= 1");
  for (double w : {w_match, w_mismatch, w_gap, w_hmatch, w_hmismatch}) {
    if (!(w > 0.0)) throw ValidationError(fmt::format("edge weights must be positive (got {})", w));
  }
  if (!(w_match >= w_mismatch && w_mismatch >= w_gap)) {
    throw ValidationError("homogeneous weights must satisfy match >= mismatch >= gap");
  }
  if (!(w_hmatch >= w_hmismatch)) throw ValidationError("heterogeneous weights must satisfy match >= mismatch");
}

double AlignmentParams::weight(MagEdgeKind kind) const {
  switch (kind) {
    case MagEdgeKind::kHomMatch: return w_match;
    case MagEdgeKind::kHomMismatch: return w_mismatch;
    case MagEdgeKind::kHomGap: return w_gap;
    case MagEdgeKind::kHetMatch: return w_hmatch;
    case MagEdgeKind::kHetMismatch: return w_hmismatch;
  }
  throw InternalError("unknown MAG edge kind");
}

void AlignmentParams::set_weights(std::string_view csv) {
  const auto fields = tsv::split(csv, ',');
  if (fields.size() != 5) throw ValidationError(fmt::format("--weights expects 5 values, got '{}'", csv));
  std::array<double, 5> w{};
  for (std::size_t i = 0; i < 5; ++i) {
    const auto* end = fields[i].data() + fields[i].size();
    auto [ptr, ec] = std::from_chars(fields[i].data(), end, w[i]);
    if (fields[i].empty() || ec != std::errc{} || ptr != end) {
      throw ValidationError(fmt::format("bad weight '{}'", fields[i]));
    }
  }
  w_match = w[0];
  w_mismatch = w[1];
  w_gap = w[2];
  w_hmatch = w[3];
  w_hmismatch = w[4];
}

std::string AlignmentParams::weights_csv() const {
  return fmt::format("{},{},{},{},{}", w_match, w_mismatch, w_gap, w_hmatch, w_hmismatch);
}

MultilayerAlignmentGraph::MultilayerAlignmentGraph(std::vector<MagNode> nodes, std::vector<MagEdge> edges,
                                                   AlignmentParams params, std::size_t layer_count)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), params_(params), layer_count_(layer_count) {
  for (const MagEdge& e : edges_) ++kind_counts_[static_cast<std::size_t>(e.kind)];
}

std::vector<MagNode> build_mag_nodes(const MultilayerNetwork& net_a, const MultilayerNetwork& net_b,
                                     const SeedPairs& seeds) {
  std::vector<MagNode> nodes;
  nodes.reserve(seeds.size());
  for (const SeedPair& s : seeds) {
    if (s.layer >= net_a.layer_count() || s.layer >= net_b.layer_count()) {
      throw UnknownNode(fmt::format("seed references layer {} which does not exist", s.layer));
    }
    if (!(s.similarity > 0.0 && s.similarity <= 1.0)) {
      throw ValidationError(fmt::format("seed similarity {} outside (0, 1]", s.similarity));
    }
    nodes.push_back({s.layer, net_a.require(s.layer, s.node_a), net_b.require(s.layer, s.node_b), s.similarity});
  }
  std::sort(nodes.begin(), nodes.end());
  const auto dup = std::adjacent_find(nodes.begin(), nodes.end());
  if (dup != nodes.end()) {
    throw DuplicateSeed(fmt::format("layer {} '{}' '{}' {}", dup->layer, net_a.label({dup->layer, dup->a}),
                                    net_b.label({dup->layer, dup->b}), dup->similarity));
  }
  return nodes;
}

std::optional<MagEdgeKind> classify_distances(BoundedDistance d_a, BoundedDistance d_b) {
  const bool adj_a = d_a == 1U;
  const bool adj_b = d_b == 1U;
  if (adj_a && adj_b) return MagEdgeKind::kHomMatch;
  if (adj_a == adj_b) return std::nullopt;
  const BoundedDistance other = adj_a ? d_b : d_a;
  if (!other) return MagEdgeKind::kHomMismatch;
  if (*other >= 2) return MagEdgeKind::kHomGap;
  // distance 0: both MAG nodes share a node on that side
  return std::nullopt;
}

std::optional<MagEdgeKind> classify_intra(const MultilayerNetwork& net_a, const MultilayerNetwork& net_b,
                                          DistanceProbe& probe_a, DistanceProbe& probe_b, const MagNode& p,
                                          const MagNode& q, unsigned delta) {
  if (p.layer != q.layer) throw InternalError("classify_intra on MAG nodes of different layers");
  if (p.layer >= net_a.layer_count() || p.layer >= net_b.layer_count()) {
    throw UnknownNode(fmt::format("layer {}", p.layer));
  }
  if (delta < 1) throw ValidationError("delta must be >= 1");
  return classify_distances(probe_a(p.a, q.a, delta), probe_b(p.b, q.b, delta));
}

std::optional<MagEdgeKind> classify_intra(const MultilayerNetwork& net_a, const MultilayerNetwork& net_b,
                                          const MagNode& p, const MagNode& q, unsigned delta) {
  if (p.layer >= net_a.layer_count() || p.layer >= net_b.layer_count()) {
    throw UnknownNode(fmt::format("layer {}", p.layer));
  }
  DistanceProbe probe_a(net_a.layer(p.layer));
  DistanceProbe probe_b(net_b.layer(p.layer));
  return classify_intra(net_a, net_b, probe_a, probe_b, p, q, delta);
}

std::optional<MagEdgeKind> classify_inter(const MultilayerNetwork& net_a, const MultilayerNetwork& net_b,
                                          const MagNode& p, const MagNode& q) {
  if (p.layer == q.layer) throw InternalError("classify_inter on MAG nodes of the same layer");
  const bool in_a = net_a.has_inter_edge({p.layer, p.a}, {q.layer, q.a});
  const bool in_b = net_b.has_inter_edge({p.layer, p.b}, {q.layer, q.b});
  if (in_a && in_b) return MagEdgeKind::kHetMatch;
  if (in_a != in_b) return MagEdgeKind::kHetMismatch;
  return std::nullopt;
}

MultilayerAlignmentGraph build_mag(const MultilayerNetwork& net_a, const MultilayerNetwork& net_b,
                                   const SeedPairs& seeds, const AlignmentParams& params, BuildOptions options) {
  if (net_a.layer_count() != net_b.layer_count()) {
    throw LayerMismatch(fmt::format("{} vs {} layers", net_a.layer_count(), net_b.layer_count()));
  }
  params.validate();
  std::vector<MagNode> nodes = build_mag_nodes(net_a, net_b, seeds);
  const std::size_t k = net_a.layer_count();

  // MAG nodes grouped by their component in each network
  std::vector<NodeBuckets> by_a(k), by_b(k);
  for (std::size_t l = 0; l < k; ++l) {
    by_a[l].resize(net_a.layer(l).node_count());
    by_b[l].resize(net_b.layer(l).node_count());
  }
  for (MagNodeId id = 0; id < nodes.size(); ++id) {
    by_a[nodes[id].layer][nodes[id].a].push_back(id);
    by_b[nodes[id].layer][nodes[id].b].push_back(id);
  }

  auto layer_edges = [&](LayerIndex l) {
    std::vector<std::uint64_t> candidates;
    for (const IntraEdge& e : net_a.layer(l).edges()) collect_candidates(by_a[l][e.u], by_a[l][e.v], candidates);
    for (const IntraEdge& e : net_b.layer(l).edges()) collect_candidates(by_b[l][e.u], by_b[l][e.v], candidates);
    sort_unique(candidates);

    DistanceProbe probe_a(net_a.layer(l));
    DistanceProbe probe_b(net_b.layer(l));
    std::vector<MagEdge> out;
    for (std::uint64_t key : candidates) {
      const auto p = static_cast<MagNodeId>(key >> 32);
      const auto q = static_cast<MagNodeId>(key & 0xffffffffU);
      if (auto kind = classify_intra(net_a, net_b, probe_a, probe_b, nodes[p], nodes[q], params.delta)) {
        out.push_back({p, q, *kind, params.weight(*kind)});
      }
    }
    return out;
  };

  std::vector<std::vector<MagEdge>> per_layer(k);
  if (options.parallel_layers && k > 1) {
    std::vector<std::jthread> workers;
    std::vector<std::exception_ptr> errors(k);
    for (LayerIndex l = 0; l < k; ++l) {
      workers.emplace_back([&, l] {
        try {
          per_layer[l] = layer_edges(l);
        } catch (...) {
          errors[l] = std::current_exception();
        }
      });
    }
    workers.clear();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  } else {
    for (LayerIndex l = 0; l < k; ++l) per_layer[l] = layer_edges(l);
  }

  // inter-layer edges once every layer is done
  std::vector<std::uint64_t> candidates;
  for (const InterEdge& e : net_a.inter_edges()) {
    collect_candidates(by_a[e.a.layer][e.a.node], by_a[e.b.layer][e.b.node], candidates);
  }
  for (const InterEdge& e : net_b.inter_edges()) {
    collect_candidates(by_b[e.a.layer][e.a.node], by_b[e.b.layer][e.b.node], candidates);
  }
  sort_unique(candidates);

  std::vector<MagEdge> edges;
  for (auto& layer : per_layer) edges.insert(edges.end(), layer.begin(), layer.end());
  for (std::uint64_t key : candidates) {
    const auto p = static_cast<MagNodeId>(key >> 32);
    const auto q = static_cast<MagNodeId>(key & 0xffffffffU);
    if (auto kind = classify_inter(net_a, net_b, nodes[p], nodes[q])) {
      edges.push_back({p, q, *kind, params.weight(*kind)});
    }
  }
  std::sort(edges.begin(), edges.end(),
            [](const MagEdge& x, const MagEdge& y) { return std::tie(x.u, x.v) < std::tie(y.u, y.v); });
  return MultilayerAlignmentGraph(std::move(nodes), std::move(edges), params, k);
}

std::string pair_label(const MultilayerNetwork& net_a, const MultilayerNetwork& net_b, const MagNode& node) {
  return fmt::format("{}|{}", net_a.label({node.layer, node.a}), net_b.label({node.layer, node.b}));
}

std::string format_mag(const MultilayerAlignmentGraph& mag, const MultilayerNetwork& net_a,
                       const MultilayerNetwork& net_b) {
  std::string out = fmt::format("#mulan-mag v1 layers={} nodes={} edges={}\n", mag.layer_count(),
                                mag.nodes().size(), mag.edges().size());
  for (const MagEdge& e : mag.edges()) {
    const MagNode& p = mag.node(e.u);
    const MagNode& q = mag.node(e.v);
    out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\n", p.layer, pair_label(net_a, net_b, p), q.layer,
                       pair_label(net_a, net_b, q), to_string(e.kind), tsv::format_shortest(e.weight));
  }
  return out;
}

}  // namespace mulan

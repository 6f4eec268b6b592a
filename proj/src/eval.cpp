#include "mulan/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "mulan/error.hpp"
#include "mulan/tsv.hpp"

namespace mulan {

namespace {

void sort_unique(std::vector<std::pair<NodeIndex, NodeIndex>>& pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
}

NcvGs3 combine(double covered, double total, double conserved, double edges_a, double edges_b) {
  NcvGs3 r;
  r.ncv = total > 0.0 ? covered / total : 0.0;
  const double denom = edges_a + edges_b - conserved;
  // many-to-many mappings can conserve more pair-of-pairs than either side
  // has induced edges; clamp to keep the score a ratio
  r.gs3 = denom > 0.0 ? std::clamp(conserved / denom, 0.0, 1.0) : 0.0;
  r.combined = std::sqrt(r.ncv * r.gs3);
  return r;
}

}  // namespace

std::size_t NodeMapping::size() const {
  return std::accumulate(layers.begin(), layers.end(), std::size_t{0},
                         [](std::size_t acc, const auto& l) { return acc + l.size(); });
}

NodeMapping extract_mapping(std::span<const std::uint32_t> assignment, const MultilayerAlignmentGraph& mag) {
  if (assignment.size() != mag.nodes().size()) throw InternalError("partition does not cover the MAG");
  std::vector<std::size_t> community_size;
  for (std::uint32_t c : assignment) {
    if (c >= community_size.size()) community_size.resize(c + 1, 0);
    ++community_size[c];
  }
  NodeMapping m;
  m.layers.resize(mag.layer_count());
  for (MagNodeId id = 0; id < assignment.size(); ++id) {
    if (community_size[assignment[id]] < 2) continue;
    const MagNode& n = mag.node(id);
    m.layers[n.layer].emplace_back(n.a, n.b);
  }
  for (auto& layer : m.layers) sort_unique(layer);
  return m;
}

NodeMapping extract_mapping(const Partition& p, const MultilayerAlignmentGraph& mag) {
  return extract_mapping(p.assignment, mag);
}

NodeMapping mapping_from_seeds(const MultilayerNetwork& net_a, const MultilayerNetwork& net_b,
                               const SeedPairs& seeds) {
  NodeMapping m;
  m.layers.resize(std::min(net_a.layer_count(), net_b.layer_count()));
  for (const SeedPair& s : seeds) {
    if (s.layer >= m.layers.size()) throw UnknownNode(fmt::format("layer {} does not exist", s.layer));
    m.layers[s.layer].emplace_back(net_a.require(s.layer, s.node_a), net_b.require(s.layer, s.node_b));
  }
  for (auto& layer : m.layers) sort_unique(layer);
  return m;
}

FncScore f_nc(const NodeMapping& aligned, const NodeMapping& truth, LayerIndex layer) {
  if (layer >= truth.layers.size() || truth.layers[layer].empty()) {
    throw EmptyTruth(fmt::format("layer {}", layer));
  }
  const auto& m = truth.layers[layer];
  static const std::vector<std::pair<NodeIndex, NodeIndex>> kNone;
  const auto& n = layer < aligned.layers.size() ? aligned.layers[layer] : kNone;

  std::size_t common = 0;
  auto i = m.begin();
  auto j = n.begin();
  while (i != m.end() && j != n.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  FncScore s;
  s.precision = n.empty() ? 0.0 : static_cast<double>(common) / static_cast<double>(n.size());
  s.recall = static_cast<double>(common) / static_cast<double>(m.size());
  const double sum = s.precision + s.recall;
  s.f_score = sum > 0.0 ? 2.0 * s.precision * s.recall / sum : 0.0;
  return s;
}

NcvGs3 ncv_gs3(const MultilayerNetwork& net_a, const MultilayerNetwork& net_b, const NodeMapping& aligned,
               LayerIndex layer) {
  if (layer >= net_a.layer_count() || layer >= net_b.layer_count()) {
    throw UnknownNode(fmt::format("layer {} does not exist", layer));
  }
  const Layer& la = net_a.layer(layer);
  const Layer& lb = net_b.layer(layer);
  std::vector<std::vector<NodeIndex>> images(la.node_count());  // a -> aligned b's
  std::vector<char> in_b(lb.node_count(), 0);
  if (layer < aligned.layers.size()) {
    for (const auto& [a, b] : aligned.layers[layer]) {
      images[a].push_back(b);
      in_b[b] = 1;
    }
  }
  std::size_t covered_a = 0;
  for (const auto& img : images) covered_a += img.empty() ? 0 : 1;
  const auto covered_b = static_cast<std::size_t>(std::count(in_b.begin(), in_b.end(), 1));

  std::size_t edges_a = 0;
  std::size_t conserved = 0;
  for (const IntraEdge& e : la.edges()) {
    if (images[e.u].empty() || images[e.v].empty()) continue;
    ++edges_a;
    for (NodeIndex x : images[e.u]) {
      for (NodeIndex y : images[e.v]) {
        if (x != y && lb.has_edge(x, y)) ++conserved;
      }
    }
  }
  std::size_t edges_b = 0;
  for (const IntraEdge& e : lb.edges()) {
    if (in_b[e.u] && in_b[e.v]) ++edges_b;
  }
  return combine(static_cast<double>(covered_a + covered_b),
                 static_cast<double>(la.node_count() + lb.node_count()), static_cast<double>(conserved),
                 static_cast<double>(edges_a), static_cast<double>(edges_b));
}

NcvGs3 ncv_gs3_inter(const MultilayerNetwork& net_a, const MultilayerNetwork& net_b, const NodeMapping& aligned) {
  if (net_a.layer_count() < 2 || net_b.layer_count() < 2) throw SingleLayer();
  const std::size_t k = std::min(net_a.layer_count(), net_b.layer_count());

  std::vector<std::vector<std::vector<NodeIndex>>> images(k);
  std::vector<std::vector<char>> in_b(k);
  std::size_t covered = 0;
  for (LayerIndex l = 0; l < k; ++l) {
    images[l].resize(net_a.layer(l).node_count());
    in_b[l].assign(net_b.layer(l).node_count(), 0);
    if (l < aligned.layers.size()) {
      for (const auto& [a, b] : aligned.layers[l]) {
        images[l][a].push_back(b);
        in_b[l][b] = 1;
      }
    }
    for (const auto& img : images[l]) covered += img.empty() ? 0 : 1;
    covered += static_cast<std::size_t>(std::count(in_b[l].begin(), in_b[l].end(), 1));
  }

  std::size_t edges_a = 0;
  std::size_t conserved = 0;
  for (const InterEdge& e : net_a.inter_edges()) {
    if (e.b.layer >= k) continue;
    const auto& ia = images[e.a.layer][e.a.node];
    const auto& ib = images[e.b.layer][e.b.node];
    if (ia.empty() || ib.empty()) continue;
    ++edges_a;
    for (NodeIndex x : ia) {
      for (NodeIndex y : ib) {
        if (net_b.has_inter_edge({e.a.layer, x}, {e.b.layer, y})) ++conserved;
      }
    }
  }
  std::size_t edges_b = 0;
  for (const InterEdge& e : net_b.inter_edges()) {
    if (e.b.layer < k && in_b[e.a.layer][e.a.node] && in_b[e.b.layer][e.b.node]) ++edges_b;
  }
  return combine(static_cast<double>(covered), static_cast<double>(net_a.node_count() + net_b.node_count()),
                 static_cast<double>(conserved), static_cast<double>(edges_a), static_cast<double>(edges_b));
}

double layer_mean(std::span<const double> per_layer) {
  if (per_layer.empty()) throw ValidationError("no layer evaluated");
  return std::accumulate(per_layer.begin(), per_layer.end(), 0.0) / static_cast<double>(per_layer.size());
}

EvalReport evaluate(const MultilayerNetwork& net_a, const MultilayerNetwork& net_b, const NodeMapping& aligned,
                    const NodeMapping& truth) {
  if (net_a.layer_count() != net_b.layer_count()) {
    throw LayerMismatch(fmt::format("{} vs {} layers", net_a.layer_count(), net_b.layer_count()));
  }
  EvalReport r;
  const auto k = static_cast<LayerIndex>(net_a.layer_count());
  std::vector<double> f, p, rec, ng;
  for (LayerIndex l = 0; l < k; ++l) {
    const bool has_truth = l < truth.layers.size() && !truth.layers[l].empty();
    r.layer_fnc.push_back(has_truth ? f_nc(aligned, truth, l) : FncScore{});
    r.layer_ncv_gs3.push_back(ncv_gs3(net_a, net_b, aligned, l));
    f.push_back(r.layer_fnc.back().f_score);
    p.push_back(r.layer_fnc.back().precision);
    rec.push_back(r.layer_fnc.back().recall);
    ng.push_back(r.layer_ncv_gs3.back().combined);
  }
  if (k > 0) {
    r.fnc_m = layer_mean(f);
    r.fnc_precision_m = layer_mean(p);
    r.fnc_recall_m = layer_mean(rec);
    r.ncv_gs3_m = layer_mean(ng);
  }
  if (k >= 2) r.ncv_gs3_inter = ncv_gs3_inter(net_a, net_b, aligned).combined;
  return r;
}

std::string_view report_header() {
  return "network\tnoise\tdetector\tcommunities\tmodularity\tfnc_m\tncv_gs3_m\tncv_gs3_inter\t"
         "fnc_precision_m\tfnc_recall_m\tlayer_fnc\tlayer_ncv_gs3";
}

std::string format_report_row(std::string_view network, std::string_view noise, std::string_view detector,
                              const EvalReport& r) {
  auto fixed = [](double v) { return tsv::format_fixed(v, 6); };
  std::vector<std::string> layer_f, layer_n;
  for (const auto& s : r.layer_fnc) layer_f.push_back(fixed(s.f_score));
  for (const auto& s : r.layer_ncv_gs3) layer_n.push_back(fixed(s.combined));
  return fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}", network, noise, detector, r.n_communities,
                     fixed(r.modularity), fixed(r.fnc_m), fixed(r.ncv_gs3_m),
                     r.ncv_gs3_inter ? fixed(*r.ncv_gs3_inter) : std::string("-"), fixed(r.fnc_precision_m),
                     fixed(r.fnc_recall_m), fmt::join(layer_f, ","), fmt::join(layer_n, ","));
}

std::string format_report_summary(const EvalReport& r) {
  std::string out;
  out += fmt::format("communities       {}\n", r.n_communities);
  out += fmt::format("modularity        {:.3f}\n", r.modularity);
  for (std::size_t l = 0; l < r.layer_fnc.size(); ++l) {
    out += fmt::format("layer {:<3}         F-NC {:.3f} (P {:.3f} R {:.3f})  NCV {:.3f} GS3 {:.3f} NCV-GS3 {:.3f}\n",
                       l, r.layer_fnc[l].f_score, r.layer_fnc[l].precision, r.layer_fnc[l].recall,
                       r.layer_ncv_gs3[l].ncv, r.layer_ncv_gs3[l].gs3, r.layer_ncv_gs3[l].combined);
  }
  out += fmt::format("F-NC_m            {:.3f}\n", r.fnc_m);
  out += fmt::format("NCV-GS3_m         {:.3f}\n", r.ncv_gs3_m);
  if (r.ncv_gs3_inter) out += fmt::format("NCV-GS3_inter     {:.3f}\n", *r.ncv_gs3_inter);
  if (r.runtime_seconds > 0.0) out += fmt::format("runtime           {:.3f} s\n", r.runtime_seconds);
  return out;
}

}  // namespace mulan

#include "mulan/louvain.hpp"

#include <numeric>

#include "mulan/error.hpp"
#include "mulan/rng.hpp"
#include "neighbor_weights.hpp"

namespace mulan {

namespace {

// Minimum advantage over staying put, in edge-weight units; absorbs rounding.
constexpr double kMoveEpsilon = 1e-12;

struct LevelResult {
  std::vector<std::uint32_t> community;
  bool moved = false;
  double gain = 0.0;  // modularity improvement of this level
};

class LocalMover {
 public:
  LocalMover(const WeightedFlatGraph& h, double total_weight, Rng& rng) : h_(h), m_(total_weight), rng_(rng) {}

  template <typename OnPass>
  LevelResult run(double tolerance, OnPass&& on_pass) {
    const auto n = static_cast<std::uint32_t>(h_.node_count());
    LevelResult result;
    result.community.resize(n);
    std::iota(result.community.begin(), result.community.end(), 0U);
    std::vector<double> tot(n);
    for (std::uint32_t i = 0; i < n; ++i) tot[i] = h_.degree(i);

    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0U);
    rng_.shuffle(std::span<std::uint32_t>(order));

    detail::NeighborWeights nw(n);
    const double two_m = 2.0 * m_;
    for (unsigned pass = 0;; ++pass) {
      double pass_gain = 0.0;
      bool pass_moved = false;
      for (std::uint32_t i : order) {
        const std::uint32_t own = result.community[i];
        const double k = h_.degree(i);
        nw.gather(h_, i, result.community);
        tot[own] -= k;

        const double own_gain = nw[own] - tot[own] * k / two_m;
        std::uint32_t best = own;
        double best_gain = own_gain;
        for (std::uint32_t c : nw.touched()) {
          if (c == own) continue;
          const double gain = nw[c] - tot[c] * k / two_m;
          const double margin = best == own ? kMoveEpsilon : 0.0;
          if (gain > best_gain + margin) {
            best = c;
            best_gain = gain;
          }
        }
        tot[best] += k;
        if (best != own) {
          result.community[i] = best;
          pass_gain += (best_gain - own_gain) / m_;
          pass_moved = true;
        }
      }
      result.gain += pass_gain;
      result.moved = result.moved || pass_moved;
      on_pass(pass, result.community, pass_gain);
      if (!pass_moved || pass_gain < tolerance) break;
    }
    return result;
  }

 private:
  const WeightedFlatGraph& h_;
  double m_;
  Rng& rng_;
};

double singleton_modularity(const WeightedFlatGraph& g) {
  const double m = g.total_weight();
  double q = 0.0;
  for (std::uint32_t i = 0; i < g.node_count(); ++i) {
    const double share = g.degree(i) / (2.0 * m);
    q += g.loop(i) / m - share * share;
  }
  return q;
}

}  // namespace

Partition louvain(const WeightedFlatGraph& g, std::uint64_t seed, const LouvainOptions& options) {
  if (g.node_count() == 0 || !(g.total_weight() > 0.0)) throw EmptyGraph();
  Rng rng(seed);

  // membership[v] = node of the current level graph holding original node v
  std::vector<std::uint32_t> membership(g.node_count());
  std::iota(membership.begin(), membership.end(), 0U);
  std::vector<std::uint32_t> projected(g.node_count());

  WeightedFlatGraph level_graph = g;
  double tracked = singleton_modularity(g);

  for (unsigned level = 0;; ++level) {
    LocalMover mover(level_graph, g.total_weight(), rng);
    auto on_pass = [&](unsigned pass, const std::vector<std::uint32_t>& community, double pass_gain) {
      tracked += pass_gain;
      if (!options.observer) return;
      for (std::size_t v = 0; v < membership.size(); ++v) projected[v] = community[membership[v]];
      options.observer(LouvainPass{level, pass, tracked, projected});
    };
    LevelResult r = mover.run(options.tolerance, on_pass);
    if (!r.moved) break;

    const std::uint32_t k = normalize_assignment(r.community);
    for (auto& v : membership) v = r.community[v];
    level_graph = level_graph.aggregate(r.community, k);
    if (r.gain < options.tolerance) break;
  }

  Partition p;
  p.assignment = membership;
  p.n_communities = normalize_assignment(p.assignment);
  p.modularity = modularity(g, p.assignment);
  p.quality = p.modularity;
  p.algorithm = Detector::kLouvain;
  p.rng_seed = seed;
  return p;
}

}  // namespace mulan

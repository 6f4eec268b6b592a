#include "mulan/infomap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mulan/error.hpp"
#include "mulan/rng.hpp"
#include "neighbor_weights.hpp"

namespace mulan {

namespace {

constexpr double kMoveEpsilon = 1e-12;

double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

// Module-level quantities of the map equation, all as fractions of 2m.
struct ModuleTerms {
  double sum_exit = 0.0;
  double sum_plogp_exit = 0.0;
  double sum_plogp_exit_flow = 0.0;

  void add(double exit, double flow, double sign) {
    sum_exit += sign * exit;
    sum_plogp_exit += sign * plogp(exit);
    sum_plogp_exit_flow += sign * plogp(exit + flow);
  }
  [[nodiscard]] double codelength(double node_entropy_term) const {
    return plogp(sum_exit) - 2.0 * sum_plogp_exit - node_entropy_term + sum_plogp_exit_flow;
  }
};

double node_flow_term(const WeightedFlatGraph& g) {
  const double two_m = 2.0 * g.total_weight();
  double s = 0.0;
  for (std::uint32_t u = 0; u < g.node_count(); ++u) s += plogp(g.degree(u) / two_m);
  return s;
}

struct LevelResult {
  std::vector<std::uint32_t> community;
  bool moved = false;
  double improvement = 0.0;
};

LevelResult local_moves(const WeightedFlatGraph& h, double two_m, Rng& rng, double tolerance) {
  const auto n = static_cast<std::uint32_t>(h.node_count());
  LevelResult r;
  r.community.resize(n);
  std::iota(r.community.begin(), r.community.end(), 0U);

  std::vector<double> tot(n), internal(n);
  ModuleTerms terms;
  auto exit_of = [&](double t, double w) { return std::max(0.0, (t - 2.0 * w) / two_m); };
  for (std::uint32_t i = 0; i < n; ++i) {
    tot[i] = h.degree(i);
    internal[i] = h.loop(i);
    terms.add(exit_of(tot[i], internal[i]), tot[i] / two_m, 1.0);
  }

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0U);
  rng.shuffle(std::span<std::uint32_t>(order));
  detail::NeighborWeights nw(n);

  for (;;) {
    double pass_improvement = 0.0;
    bool pass_moved = false;
    for (std::uint32_t i : order) {
      const std::uint32_t own = r.community[i];
      const double k = h.degree(i);
      const double loop = h.loop(i);
      nw.gather(h, i, r.community);

      const double own_exit = exit_of(tot[own], internal[own]);
      const double own_flow = tot[own] / two_m;
      const double own_tot_after = tot[own] - k;
      const double own_int_after = internal[own] - nw[own] - loop;
      const double own_exit_after = exit_of(own_tot_after, own_int_after);
      const double own_flow_after = own_tot_after / two_m;

      std::uint32_t best = own;
      double best_delta = 0.0;
      for (std::uint32_t c : nw.touched()) {
        if (c == own) continue;
        const double c_exit = exit_of(tot[c], internal[c]);
        const double c_flow = tot[c] / two_m;
        const double c_exit_after = exit_of(tot[c] + k, internal[c] + nw[c] + loop);
        const double c_flow_after = (tot[c] + k) / two_m;

        const double sum_exit_after = terms.sum_exit - own_exit - c_exit + own_exit_after + c_exit_after;
        const double delta =
            plogp(sum_exit_after) - plogp(terms.sum_exit) -
            2.0 * (plogp(own_exit_after) + plogp(c_exit_after) - plogp(own_exit) - plogp(c_exit)) +
            (plogp(own_exit_after + own_flow_after) + plogp(c_exit_after + c_flow_after) -
             plogp(own_exit + own_flow) - plogp(c_exit + c_flow));
        const double margin = best == own ? kMoveEpsilon : 0.0;
        if (delta < best_delta - margin) {
          best = c;
          best_delta = delta;
        }
      }
      if (best == own) continue;

      terms.add(own_exit, own_flow, -1.0);
      terms.add(exit_of(tot[best], internal[best]), tot[best] / two_m, -1.0);
      tot[own] = own_tot_after;
      internal[own] = own_int_after;
      tot[best] += k;
      internal[best] += nw[best] + loop;
      terms.add(exit_of(tot[own], internal[own]), tot[own] / two_m, 1.0);
      terms.add(exit_of(tot[best], internal[best]), tot[best] / two_m, 1.0);
      r.community[i] = best;
      pass_improvement -= best_delta;
      pass_moved = true;
    }
    r.improvement += pass_improvement;
    r.moved = r.moved || pass_moved;
    if (!pass_moved || pass_improvement < tolerance) break;
  }
  return r;
}

}  // namespace

double map_equation_codelength(const WeightedFlatGraph& g, std::span<const std::uint32_t> assignment) {
  if (g.node_count() == 0 || !(g.total_weight() > 0.0)) throw EmptyGraph();
  if (assignment.size() != g.node_count()) throw InternalError("assignment size mismatch");
  const double two_m = 2.0 * g.total_weight();
  const std::uint32_t k = assignment.empty() ? 0 : *std::max_element(assignment.begin(), assignment.end()) + 1;
  std::vector<double> tot(k, 0.0), internal(k, 0.0);
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
  ModuleTerms terms;
  for (std::uint32_t c = 0; c < k; ++c) {
    if (tot[c] == 0.0) continue;
    terms.add(std::max(0.0, (tot[c] - 2.0 * internal[c]) / two_m), tot[c] / two_m, 1.0);
  }
  return terms.codelength(node_flow_term(g));
}

Partition infomap_two_level(const WeightedFlatGraph& g, std::uint64_t seed, const InfomapOptions& options) {
  if (g.node_count() == 0 || !(g.total_weight() > 0.0)) throw EmptyGraph();
  Rng rng(seed);
  const double two_m = 2.0 * g.total_weight();

  std::vector<std::uint32_t> membership(g.node_count());
  std::iota(membership.begin(), membership.end(), 0U);
  WeightedFlatGraph level_graph = g;
  for (;;) {
    LevelResult r = local_moves(level_graph, two_m, rng, options.tolerance);
    if (!r.moved) break;
    const std::uint32_t k = normalize_assignment(r.community);
    for (auto& v : membership) v = r.community[v];
    level_graph = level_graph.aggregate(r.community, k);
    if (r.improvement < options.tolerance) break;
  }

  Partition p;
  p.assignment = membership;
  p.n_communities = normalize_assignment(p.assignment);
  p.quality = -map_equation_codelength(g, p.assignment);
  p.modularity = modularity(g, p.assignment);
  p.algorithm = Detector::kInfomap;
  p.rng_seed = seed;
  return p;
}

}  // namespace mulan

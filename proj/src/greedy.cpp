#include "mulan/greedy.hpp"

#include <map>
#include <set>
#include <tuple>

#include "mulan/error.hpp"

namespace mulan {

Partition greedy_cnm(const WeightedFlatGraph& g, std::vector<double>* merge_gains) {
  if (g.node_count() == 0 || !(g.total_weight() > 0.0)) throw EmptyGraph();
  const auto n = static_cast<std::uint32_t>(g.node_count());
  const double m = g.total_weight();

  std::vector<double> tot(n);
  std::vector<std::map<std::uint32_t, double>> between(n);  // crossing weight to each adjacent community
  for (std::uint32_t u = 0; u < n; ++u) {
    tot[u] = g.degree(u);
    const auto nb = g.neighbors(u);
    const auto w = g.weights(u);
    for (std::size_t i = 0; i < nb.size(); ++i) between[u][nb[i]] = w[i];
  }

  auto gain = [&](std::uint32_t a, std::uint32_t b) {
    return between[a].at(b) / m - tot[a] * tot[b] / (2.0 * m * m);
  };

  // (-gain, lo, hi): begin() is the best merge, ties to the smallest pair
  using Candidate = std::tuple<double, std::uint32_t, std::uint32_t>;
  std::set<Candidate> queue;
  auto key = [&](std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    return Candidate{-gain(a, b), a, b};
  };
  for (std::uint32_t u = 0; u < n; ++u) {
    for (const auto& [v, w] : between[u]) {
      if (u < v) queue.insert(key(u, v));
    }
  }

  // union-find style parent links resolved at the end
  std::vector<std::uint32_t> merged_into(n);
  for (std::uint32_t u = 0; u < n; ++u) merged_into[u] = u;

  while (!queue.empty()) {
    const auto [neg_gain, keep, gone] = *queue.begin();
    if (!(-neg_gain > 0.0)) break;
    if (merge_gains) merge_gains->push_back(-neg_gain);

    for (const auto& [c, w] : between[keep]) queue.erase(key(keep, c));
    for (const auto& [c, w] : between[gone]) {
      if (c != keep) queue.erase(key(gone, c));
    }

    for (const auto& [c, w] : between[gone]) {
      if (c == keep) continue;
      between[keep][c] += w;
      between[c][keep] += w;
      between[c].erase(gone);
    }
    between[keep].erase(gone);
    between[gone].clear();
    tot[keep] += tot[gone];
    tot[gone] = 0.0;
    merged_into[gone] = keep;

    for (const auto& [c, w] : between[keep]) queue.insert(key(keep, c));
  }

  Partition p;
  p.assignment.resize(n);
  for (std::uint32_t u = 0; u < n; ++u) {
    std::uint32_t r = u;
    while (merged_into[r] != r) r = merged_into[r];
    p.assignment[u] = r;
  }
  p.n_communities = normalize_assignment(p.assignment);
  p.modularity = modularity(g, p.assignment);
  p.quality = p.modularity;
  p.algorithm = Detector::kGreedy;
  return p;
}

}  // namespace mulan

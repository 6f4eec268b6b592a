// Acceptance suite: runs each end-to-end criterion and prints one PASS/FAIL
// line per criterion. `acceptance` runs all of them; `acceptance N` runs one.
// The exit status is nonzero if any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "mulan/community.hpp"
#include "mulan/eval.hpp"
#include "mulan/flat_graph.hpp"
#include "mulan/greedy.hpp"
#include "mulan/louvain.hpp"
#include "mulan/mag.hpp"
#include "mulan/pipeline.hpp"
#include "mulan/seeds.hpp"
#include "mulan/synth.hpp"
#include "test_util.hpp"

namespace {

using namespace mulan;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kRootSeed = 20240601;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

SynthSpec benchmark_shape() { return SynthSpec{2, 1000, 1, 0.30, 0}; }

// The benchmark sweep shared by criteria 2-4: 10 networks, 0..25 % noise,
// all three detectors.
struct Sweep {
  std::vector<CellResult> cells;
  double seconds = 0.0;

  [[nodiscard]] const CellResult& at(std::uint32_t network, double noise, Detector d) const {
    for (const auto& c : cells) {
      if (c.network == network && c.noise_percent == noise && c.detector == d) return c;
    }
    throw std::runtime_error("missing cell");
  }
};

PipelineConfig sweep_config() {
  PipelineConfig c;
  c.shape = benchmark_shape();
  c.plan = SeedPlan{kRootSeed};
  c.networks = 10;
  c.noise_percents = {0, 5, 10, 15, 20, 25};
  c.detectors = {Detector::kLouvain, Detector::kGreedy, Detector::kInfomap};
  return c;
}

const Sweep& sweep() {
  static const Sweep s = [] {
    Sweep r;
    const auto t = Clock::now();
    r.cells = run_pipeline(sweep_config());
    r.seconds = seconds_since(t);
    for (const auto& c : r.cells) {
      if (c.error) throw std::runtime_error("pipeline cell failed: " + *c.error);
    }
    return r;
  }();
  return s;
}

Verdict criterion1() {
  int ok = 0;
  double worst = 0.0;
  std::string first_problem;
  const int networks = 10;
  for (int i = 0; i < networks; ++i) {
    SynthSpec spec = benchmark_shape();
    spec.rng_seed = Rng::derive(kRootSeed, 1000 + static_cast<std::uint64_t>(i));
    const auto net = generate_multilayer(spec);
    const auto t = Clock::now();
    const auto seeds = identity_seeds(net, net);
    const auto mag = build_mag(net, net, seeds, {});
    const std::vector<std::uint32_t> one(mag.nodes().size(), 0);
    const auto r = evaluate(net, net, extract_mapping(one, mag), mapping_from_seeds(net, net, seeds));
    const double secs = seconds_since(t);
    worst = std::max(worst, secs);
    const bool only_matches = mag.count(MagEdgeKind::kHomMismatch) == 0 && mag.count(MagEdgeKind::kHomGap) == 0 &&
                              mag.count(MagEdgeKind::kHetMismatch) == 0 &&
                              mag.edges().size() == net.edge_count();
    const bool exact = r.fnc_m == 1.0 && r.ncv_gs3_m == 1.0 && r.ncv_gs3_inter == 1.0;
    if (only_matches && exact && secs < 1.0) {
      ++ok;
    } else if (first_problem.empty()) {
      first_problem = fmt::format(" first failure net {}: matches_only={} F-NC_m={} NCV-GS3_m={} inter={} t={:.3f}s", i,
                                  only_matches, r.fnc_m, r.ncv_gs3_m, r.ncv_gs3_inter.value_or(-1), secs);
    }
  }
  return {ok == networks,
          fmt::format("{}/{} networks exact (only match edges, F-NC_m = NCV-GS3_m = NCV-GS3_inter = 1), "
                      "slowest {:.3f}s < 1s{}",
                      ok, networks, worst, first_problem)};
}

Verdict criterion2() {
  const Sweep& s = sweep();
  int louvain_ok = 0, greedy_ok = 0, infomap_fewer = 0;
  std::string counts;
  for (std::uint32_t i = 0; i < 10; ++i) {
    const auto& lv = s.at(i, 0, Detector::kLouvain).report;
    const auto& gr = s.at(i, 0, Detector::kGreedy).report;
    const auto& im = s.at(i, 0, Detector::kInfomap).report;
    auto in_band = [](const EvalReport& r) {
      return r.modularity >= 0.80 && r.modularity <= 0.92 && r.n_communities >= 28 && r.n_communities <= 68;
    };
    louvain_ok += in_band(lv) ? 1 : 0;
    greedy_ok += in_band(gr) ? 1 : 0;
    infomap_fewer += im.n_communities < lv.n_communities ? 1 : 0;
    counts += fmt::format(" N{}:L{}/{:.3f},G{}/{:.3f},I{}", i + 1, lv.n_communities, lv.modularity,
                          gr.n_communities, gr.modularity, im.n_communities);
  }
  const bool pass = louvain_ok >= 9 && greedy_ok >= 9 && infomap_fewer >= 8 && s.seconds < 120.0;
  return {pass, fmt::format("louvain in band {}/10 (need 9), greedy in band {}/10 (need 9), infomap fewer than "
                            "louvain {}/10 (need 8), sweep {:.1f}s < 120s;{}",
                            louvain_ok, greedy_ok, infomap_fewer, s.seconds, counts)};
}

Verdict criterion3() {
  const Sweep& s = sweep();
  int ok = 0;
  double lowest = 1.0;
  for (std::uint32_t i = 0; i < 10; ++i) {
    const double f = s.at(i, 0, Detector::kLouvain).report.fnc_m;
    lowest = std::min(lowest, f);
    ok += f >= 0.95 ? 1 : 0;
  }
  return {ok >= 9, fmt::format("zero-noise louvain F-NC_m >= 0.95 in {}/10 networks (need 9), lowest {:.4f}", ok,
                               lowest)};
}

Verdict criterion4() {
  const Sweep& s = sweep();
  int fnc_ok = 0, ncv_ok = 0, total = 0;
  std::string examples;
  for (Detector d : {Detector::kLouvain, Detector::kGreedy, Detector::kInfomap}) {
    for (std::uint32_t i = 0; i < 10; ++i) {
      const auto& r0 = s.at(i, 0, d).report;
      const auto& r25 = s.at(i, 25, d).report;
      ++total;
      fnc_ok += r25.fnc_m < r0.fnc_m ? 1 : 0;
      ncv_ok += r25.ncv_gs3_m < r0.ncv_gs3_m ? 1 : 0;
      if (i == 0) {
        examples += fmt::format(" {} N1: F-NC_m {:.4f}->{:.4f}, NCV-GS3_m {:.4f}->{:.4f};", to_string(d), r0.fnc_m,
                                r25.fnc_m, r0.ncv_gs3_m, r25.ncv_gs3_m);
      }
    }
  }
  return {fnc_ok == total && ncv_ok == total,
          fmt::format("25% below 0%: F-NC_m {}/{}, NCV-GS3_m {}/{} (need all);{}", fnc_ok, total, ncv_ok, total,
                      examples)};
}

Verdict criterion5() {
  SynthSpec spec = benchmark_shape();
  spec.rng_seed = Rng::derive(kRootSeed, 5);
  const auto a = generate_multilayer(spec);
  const auto b = perturb(a, NoiseSpec{0.05, Rng::derive(kRootSeed, 6)});
  const auto seeds = identity_seeds(a, b);
  auto t = Clock::now();
  const auto mag = build_mag(a, b, seeds, {});
  const double mag_s = seconds_since(t);
  const auto g = WeightedFlatGraph::from_mag(mag);
  t = Clock::now();
  const auto p = louvain(g, 1);
  const double lv_s = seconds_since(t);
  return {mag_s < 10.0 && lv_s < 5.0,
          fmt::format("{} nodes / {} edges vs {} edges: build_mag {:.4f}s < 10s, louvain {:.4f}s < 5s ({} MAG edges, "
                      "{} communities)",
                      a.node_count(), a.edge_count(), b.edge_count(), mag_s, lv_s, mag.edges().size(),
                      p.n_communities)};
}

Verdict criterion6() {
  std::mt19937_64 gen(6060);
  std::uniform_int_distribution<int> size(2, 8);
  std::uniform_real_distribution<double> weight(0.1, 3.0);
  int graphs = 0;
  double worst = 0.0;
  while (graphs < 60) {
    const int n = size(gen);
    std::vector<WeightedEdge> e;
    for (auto [u, v] : testing::random_edges(n, 0.5, gen)) {
      e.push_back({static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v), weight(gen)});
    }
    if (e.empty()) continue;
    ++graphs;
    const WeightedFlatGraph g(static_cast<std::size_t>(n), e);
    testing::for_each_partition(static_cast<std::size_t>(n), [&](const std::vector<std::uint32_t>& p) {
      worst = std::max(worst, std::abs(modularity(g, p) - testing::modularity_oracle(static_cast<std::size_t>(n), e, p)));
    });
  }
  int family_ok = 0, family_total = 0;
  for (std::uint32_t k = 2; k <= 5; ++k) {
    const auto e = testing::two_cliques(k);
    const auto best = testing::exhaustive_modularity(2 * k, e);
    const WeightedFlatGraph g(2 * k, e);
    const bool unique = best.argmax.size() == 1;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto p = louvain(g, seed);
      ++family_total;
      family_ok += unique && testing::canonical(p.assignment) == best.argmax[0] ? 1 : 0;
    }
    const auto c = greedy_cnm(g);
    ++family_total;
    family_ok += unique && testing::canonical(c.assignment) == best.argmax[0] ? 1 : 0;
  }
  return {worst <= 1e-9 && family_ok == family_total,
          fmt::format("{} random weighted graphs (<= 8 nodes, every set partition): max |Q - oracle| = {:.2e} <= 1e-9; "
                      "two-clique family k=2..5: {}/{} louvain/CNM runs equal the exhaustive optimum",
                      graphs, worst, family_ok, family_total)};
}

Verdict criterion7() {
  std::mt19937_64 gen(7070);
  int agree = 0, total = 0;
  std::map<std::string, int> kinds;
  while (total < 1000) {
    const int n = 10;
    const auto ea = testing::random_edges(n, 0.22, gen);
    const auto eb = testing::random_edges(n, 0.22, gen);
    const auto a = testing::make_layer(n, ea);
    const auto b = testing::make_layer(n, eb);
    std::uniform_int_distribution<NodeIndex> pick(0, n - 1);
    const MagNode p{0, pick(gen), pick(gen), 1.0};
    const MagNode q{0, pick(gen), pick(gen), 1.0};
    if (p == q) continue;
    const unsigned delta = 1 + static_cast<unsigned>(total % 3);
    const int d_a = testing::bfs_all(testing::adjacency_of(a.layer(0)), static_cast<int>(p.a))[q.a];
    const int d_b = testing::bfs_all(testing::adjacency_of(b.layer(0)), static_cast<int>(p.b))[q.b];
    std::optional<MagEdgeKind> expected;
    const auto beyond = [&](int d) { return d < 0 || d > static_cast<int>(delta); };
    if (d_a == 1 && d_b == 1) {
      expected = MagEdgeKind::kHomMatch;
    } else if (d_a == 1 || d_b == 1) {
      const int other = d_a == 1 ? d_b : d_a;
      if (other != 0) expected = beyond(other) ? MagEdgeKind::kHomMismatch : MagEdgeKind::kHomGap;
    }
    const auto got = classify_intra(a, b, p, q, delta);
    ++total;
    agree += got == expected ? 1 : 0;
    ++kinds[expected ? std::string(to_string(*expected)) : "none"];
  }
  std::string mix;
  for (const auto& [k, v] : kinds) mix += fmt::format(" {}={}", k, v);
  return {agree == total, fmt::format("{}/{} instances agree with the unbounded-BFS classifier (delta in 1..3);{}",
                                      agree, total, mix)};
}

std::map<std::string, std::string> snapshot(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    files[fs::relative(entry.path(), root).string()] = ss.str();
  }
  return files;
}

Verdict criterion8() {
  testing::TempDir d1("accept8a"), d2("accept8b");
  PipelineConfig c = sweep_config();
  c.out_dir = d1.path();
  (void)run_pipeline(c);
  c.out_dir = d2.path();
  c.jobs = 2;
  (void)run_pipeline(c);
  auto a = snapshot(d1.path());
  auto b = snapshot(d2.path());
  // wall-clock timings are the one intentionally non-deterministic output
  a.erase("timings.tsv");
  b.erase("timings.tsv");
  std::size_t same = 0;
  for (const auto& [name, content] : a) {
    const auto it = b.find(name);
    same += it != b.end() && it->second == content ? 1 : 0;
  }
  return {same == a.size() && a.size() == b.size() && !a.empty(),
          fmt::format("{}/{} output files byte-identical across two runs (10 networks x 6 noise levels x 3 detectors, "
                      "jobs 1 vs 2)",
                      same, a.size())};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Verdict()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                       criterion5, criterion6, criterion7, criterion8};
  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) {
    const int k = std::atoi(argv[i]);
    if (k < 1 || k > static_cast<int>(criteria.size())) {
      fmt::print(stderr, "usage: {} [criterion 1-8]...\n", argv[0]);
      return 2;
    }
    selected.push_back(static_cast<std::size_t>(k - 1));
  }
  if (selected.empty()) {
    for (std::size_t i = 0; i < criteria.size(); ++i) selected.push_back(i);
  }

  int failed = 0;
  for (std::size_t i : selected) {
    Verdict v;
    try {
      v = criteria[i]();
    } catch (const std::exception& e) {
      v = {false, fmt::format("error: {}", e.what())};
    }
    fmt::print("{} criterion {}: {}\n", v.pass ? "PASS" : "FAIL", i + 1, v.detail);
    std::fflush(stdout);
    failed += v.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}

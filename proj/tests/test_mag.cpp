#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "mulan/error.hpp"
#include "mulan/mag.hpp"
#include "mulan/seeds.hpp"
#include "mulan/synth.hpp"
#include "test_util.hpp"

namespace mulan {
namespace {

using testing::make_layer;
using testing::make_net;
using K = MagEdgeKind;

MagNode node_for(const MultilayerNetwork& a, const MultilayerNetwork& b, LayerIndex l, const std::string& x,
                 const std::string& y) {
  return MagNode{l, a.require(l, x), b.require(l, y), 1.0};
}

std::optional<K> intra(const MultilayerNetwork& a, const MultilayerNetwork& b, const std::string& p,
                       const std::string& q, unsigned delta = 2) {
  return classify_intra(a, b, node_for(a, b, 0, p, p), node_for(a, b, 0, q, q), delta);
}

// Reference classifier built on full BFS distances.
std::optional<K> classify_oracle(int d_a, int d_b, unsigned delta) {
  const auto beyond = [&](int d) { return d < 0 || d > static_cast<int>(delta); };
  if (d_a == 1 && d_b == 1) return K::kHomMatch;
  if (d_a == 1 || d_b == 1) {
    const int other = d_a == 1 ? d_b : d_a;
    if (other == 0) return std::nullopt;
    return beyond(other) ? K::kHomMismatch : K::kHomGap;
  }
  return std::nullopt;
}

TEST(Params, DefaultsAndWeights) {
  const AlignmentParams p;
  EXPECT_EQ(p.delta, 2U);
  EXPECT_DOUBLE_EQ(p.weight(K::kHomMatch), 1.0);
  EXPECT_DOUBLE_EQ(p.weight(K::kHomMismatch), 0.5);
  EXPECT_DOUBLE_EQ(p.weight(K::kHomGap), 0.2);
  EXPECT_DOUBLE_EQ(p.weight(K::kHetMatch), 0.9);
  EXPECT_DOUBLE_EQ(p.weight(K::kHetMismatch), 0.4);
  EXPECT_NO_THROW(p.validate());
  // default ordering w_match > w_hmatch > w_mismatch > w_hmismatch > w_gap > 0
  EXPECT_GT(p.w_match, p.w_hmatch);
  EXPECT_GT(p.w_hmatch, p.w_mismatch);
  EXPECT_GT(p.w_mismatch, p.w_hmismatch);
  EXPECT_GT(p.w_hmismatch, p.w_gap);
  EXPECT_EQ(p.weights_csv(), "1,0.5,0.2,0.9,0.4");
}

TEST(Params, Validation) {
  AlignmentParams p;
  p.delta = 0;
  EXPECT_THROW(p.validate(), ValidationError);
  p = {};
  p.w_gap = 0.0;
  EXPECT_THROW(p.validate(), ValidationError);
  p = {};
  p.w_mismatch = 2.0;  // above w_match
  EXPECT_THROW(p.validate(), ValidationError);
  p = {};
  p.w_hmismatch = 0.95;  // above w_hmatch
  EXPECT_THROW(p.validate(), ValidationError);
  p = {};
  p.set_weights("2,1,0.5,1.5,0.1");
  EXPECT_DOUBLE_EQ(p.w_hmatch, 1.5);
  EXPECT_THROW(p.set_weights("1,0.5,0.2"), ValidationError);
  EXPECT_THROW(p.set_weights("1,0.5,0.2,x,0.4"), ValidationError);
}

TEST(Classify, MatchWhenAdjacentInBoth) {
  const auto a = make_net(1, {{0, "a", "b"}});
  EXPECT_EQ(intra(a, a, "a", "b"), K::kHomMatch);
}

TEST(Classify, MismatchWhenDisconnectedInOther) {
  const auto a = make_net(1, {{0, "a", "b"}});
  const auto b = make_net(1, {}, {}, {{0, "a"}, {0, "b"}});
  EXPECT_EQ(intra(a, b, "a", "b"), K::kHomMismatch);
  EXPECT_EQ(intra(b, a, "a", "b"), K::kHomMismatch);
}

TEST(Classify, GapAtDistanceTwo) {
  const auto a = make_net(1, {{0, "a", "b"}, {0, "a", "c"}});
  const auto b = make_net(1, {{0, "a", "c"}, {0, "c", "b"}});
  EXPECT_EQ(intra(a, b, "a", "b"), K::kHomGap);
}

TEST(Classify, MismatchAtDistanceThreeOnSixNodePath) {
  // netB is the path 0-1-2-3-4-5; netA adds the chord 0-3
  const auto b = make_layer(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
  const auto a = make_layer(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 3}});
  const auto d = testing::bfs_all(testing::adjacency_of(b.layer(0)), 0)[3];
  ASSERT_EQ(d, 3);
  EXPECT_EQ(intra(a, b, "0", "3", 2), K::kHomMismatch);
  EXPECT_EQ(intra(a, b, "0", "3", 3), K::kHomGap);
  EXPECT_EQ(intra(a, b, "0", "3", 1), K::kHomMismatch);
}

TEST(Classify, NoEdgeWhenNeitherAdjacent) {
  const auto a = make_layer(4, {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_EQ(intra(a, a, "0", "2"), std::nullopt);
  EXPECT_EQ(intra(a, a, "0", "3"), std::nullopt);
}

TEST(Classify, SharedEndpointGivesNoEdge) {
  // (a,x) and (b,x): adjacent in A, same node in B
  const auto a = make_net(1, {{0, "a", "b"}, {0, "x", "a"}});
  const MagNode p = node_for(a, a, 0, "a", "x");
  const MagNode q = node_for(a, a, 0, "b", "x");
  EXPECT_EQ(classify_intra(a, a, p, q, 2), std::nullopt);
}

TEST(Classify, DistanceTable) {
  EXPECT_EQ(classify_distances(1, 1), K::kHomMatch);
  EXPECT_EQ(classify_distances(1, 2), K::kHomGap);
  EXPECT_EQ(classify_distances(2, 1), K::kHomGap);
  EXPECT_EQ(classify_distances(1, std::nullopt), K::kHomMismatch);
  EXPECT_EQ(classify_distances(std::nullopt, 1), K::kHomMismatch);
  EXPECT_EQ(classify_distances(2, 2), std::nullopt);  // double gap
  EXPECT_EQ(classify_distances(std::nullopt, std::nullopt), std::nullopt);
  EXPECT_EQ(classify_distances(1, 0), std::nullopt);
}

TEST(Classify, AgreesWithUnboundedBfsOracle) {
  std::mt19937_64 gen(77);
  int checked = 0;
  for (int instance = 0; instance < 1000; ++instance) {
    const int n = 12;
    const auto ea = testing::random_edges(n, 0.2, gen);
    auto eb = ea;
    // perturb B: drop and add a few edges
    std::shuffle(eb.begin(), eb.end(), gen);
    eb.resize(eb.size() * 3 / 4);
    for (auto e : testing::random_edges(n, 0.04, gen)) {
      if (std::find(eb.begin(), eb.end(), e) == eb.end()) eb.push_back(e);
    }
    const auto a = make_layer(n, ea);
    const auto b = make_layer(n, eb);
    std::uniform_int_distribution<int> pick(0, n - 1);
    // label order differs from index order ("10" < "2"); resolve by label
    const int pa = pick(gen), qa = pick(gen), pb = pick(gen), qb = pick(gen);
    const unsigned delta = 1 + static_cast<unsigned>(instance % 3);
    const MagNode p{0, a.require(0, std::to_string(pa)), b.require(0, std::to_string(pb)), 1.0};
    const MagNode q{0, a.require(0, std::to_string(qa)), b.require(0, std::to_string(qb)), 1.0};
    if (p == q) continue;
    const int d_a = testing::bfs_all(testing::adjacency_of(a.layer(0)), static_cast<int>(p.a))[q.a];
    const int d_b = testing::bfs_all(testing::adjacency_of(b.layer(0)), static_cast<int>(p.b))[q.b];
    EXPECT_EQ(classify_intra(a, b, p, q, delta), classify_oracle(d_a, d_b, delta))
        << "instance " << instance << " dA=" << d_a << " dB=" << d_b << " delta=" << delta;
    EXPECT_EQ(classify_intra(a, b, p, q, delta), classify_intra(a, b, q, p, delta));
    ++checked;
  }
  EXPECT_GT(checked, 950);
}

TEST(Classify, Inter) {
  const auto a = make_net(2, {{0, "x", "y"}, {1, "u", "v"}}, {{0, "x", 1, "u"}, {0, "y", 1, "v"}});
  const auto b = make_net(2, {{0, "x", "y"}, {1, "u", "v"}}, {{0, "x", 1, "u"}, {0, "y", 1, "u"}});
  const auto p = [&](LayerIndex l, const std::string& s) { return node_for(a, b, l, s, s); };
  EXPECT_EQ(classify_inter(a, b, p(0, "x"), p(1, "u")), K::kHetMatch);
  EXPECT_EQ(classify_inter(a, b, p(0, "y"), p(1, "v")), K::kHetMismatch);
  EXPECT_EQ(classify_inter(a, b, p(0, "y"), p(1, "u")), K::kHetMismatch);
  EXPECT_EQ(classify_inter(a, b, p(0, "x"), p(1, "v")), std::nullopt);
  EXPECT_EQ(classify_inter(a, b, p(1, "u"), p(0, "x")), K::kHetMatch);
}

TEST(MagNodes, IdentitySeedsGiveOneNodePerSeed) {
  const auto net = generate_multilayer(SynthSpec{2, 1000, 1, 0.3, 4});
  const auto nodes = build_mag_nodes(net, net, identity_seeds(net, net));
  EXPECT_EQ(std::count_if(nodes.begin(), nodes.end(), [](const MagNode& n) { return n.layer == 0; }), 1000);
  EXPECT_EQ(nodes.size(), 2000U);
  EXPECT_TRUE(std::is_sorted(nodes.begin(), nodes.end()));
}

TEST(MagNodes, EmptySeedsGiveEmptyMag) {
  const auto net = make_net(1, {{0, "a", "b"}});
  const auto mag = build_mag(net, net, {}, {});
  EXPECT_TRUE(mag.nodes().empty());
  EXPECT_TRUE(mag.edges().empty());
}

TEST(MagNodes, Errors) {
  const auto net = make_net(1, {{0, "a", "b"}});
  EXPECT_THROW((void)build_mag_nodes(net, net, {{0, "a", "zz", 1.0}}), UnknownNode);
  EXPECT_THROW((void)build_mag_nodes(net, net, {{3, "a", "a", 1.0}}), UnknownNode);
  EXPECT_THROW((void)build_mag_nodes(net, net, {{0, "a", "a", 1.0}, {0, "a", "a", 1.0}}), DuplicateSeed);
  EXPECT_THROW((void)build_mag_nodes(net, net, {{0, "a", "a", 0.0}}), ValidationError);
  EXPECT_THROW((void)build_mag_nodes(net, net, {{0, "a", "a", 1.5}}), ValidationError);
  // multiset: a node may take part in several pairs
  EXPECT_EQ(build_mag_nodes(net, net, {{0, "a", "a", 1.0}, {0, "a", "b", 0.5}}).size(), 2U);
}

TEST(BuildMag, SelfAlignmentIsAllMatches) {
  const auto net = generate_multilayer(SynthSpec{2, 1000, 1, 0.3, 21});
  const auto mag = build_mag(net, net, identity_seeds(net, net), {});
  EXPECT_EQ(mag.edges().size(), net.intra_edge_count() + net.inter_edge_count());
  EXPECT_EQ(mag.count(K::kHomMatch), net.intra_edge_count());
  EXPECT_EQ(mag.count(K::kHetMatch), net.inter_edge_count());
  EXPECT_EQ(mag.count(K::kHomGap) + mag.count(K::kHomMismatch) + mag.count(K::kHetMismatch), 0U);
}

TEST(BuildMag, ThreeNodeLayersDifferingByOneEdge) {
  // triangle vs path: the removed edge has an alternative path of length 2
  const auto tri = make_net(1, {{0, "a", "b"}, {0, "b", "c"}, {0, "a", "c"}});
  const auto path = make_net(1, {{0, "a", "b"}, {0, "b", "c"}});
  auto mag = build_mag(tri, path, identity_seeds(tri, path), {});
  EXPECT_EQ(mag.edges().size(), 3U);
  EXPECT_EQ(mag.count(K::kHomMatch), 2U);
  EXPECT_EQ(mag.count(K::kHomGap), 1U);

  // path vs single edge: no alternative path
  const auto one = make_net(1, {{0, "a", "b"}}, {}, {{0, "c"}});
  mag = build_mag(path, one, identity_seeds(path, one), {});
  EXPECT_EQ(mag.edges().size(), 2U);
  EXPECT_EQ(mag.count(K::kHomMatch), 1U);
  EXPECT_EQ(mag.count(K::kHomMismatch), 1U);
  for (const auto& e : mag.edges()) EXPECT_DOUBLE_EQ(e.weight, mag.params().weight(e.kind));
}

TEST(BuildMag, DisjointSeedsGiveNoEdges) {
  const auto net = make_net(1, {{0, "a", "b"}, {0, "c", "d"}});
  const SeedPairs seeds{{0, "a", "c", 1.0}, {0, "d", "b", 1.0}};
  // (a,c)-(d,b): a-d not adjacent, c-b not adjacent
  const auto mag = build_mag(net, net, seeds, {});
  EXPECT_EQ(mag.nodes().size(), 2U);
  EXPECT_TRUE(mag.edges().empty());
}

TEST(BuildMag, LayerMismatch) {
  const auto a = make_net(1, {{0, "a", "b"}});
  const auto b = make_net(2, {{0, "a", "b"}});
  EXPECT_THROW((void)build_mag(a, b, {{0, "a", "a", 1.0}}, {}), LayerMismatch);
}

TEST(BuildMag, MatchesAllPairsReference) {
  // Edge-driven enumeration must find exactly what an all-pairs scan finds.
  std::mt19937_64 gen(5);
  for (int round = 0; round < 20; ++round) {
    SynthSpec spec{2, 40, 1 + static_cast<std::uint32_t>(round % 2), 0.4, gen()};
    const auto a = generate_multilayer(spec);
    const auto b = perturb(a, NoiseSpec{0.3, gen()});
    SeedPairs seeds = identity_seeds(a, b);
    // add some many-to-many pairs
    for (int extra = 0; extra < 10; ++extra) {
      const LayerIndex l = extra % 2;
      const auto x = synth_label(static_cast<std::uint32_t>(gen() % 40), 40);
      const auto y = synth_label(static_cast<std::uint32_t>(gen() % 40), 40);
      const SeedPair s{l, x, y, 0.5};
      if (x != y && std::find(seeds.begin(), seeds.end(), s) == seeds.end()) seeds.push_back(s);
    }
    const AlignmentParams params;
    const auto mag = build_mag(a, b, seeds, params);
    std::vector<MagEdge> expected;
    const auto nodes = mag.nodes();
    for (MagNodeId i = 0; i < nodes.size(); ++i) {
      for (MagNodeId j = i + 1; j < nodes.size(); ++j) {
        const auto kind = nodes[i].layer == nodes[j].layer ? classify_intra(a, b, nodes[i], nodes[j], params.delta)
                                                           : classify_inter(a, b, nodes[i], nodes[j]);
        if (kind) expected.push_back({i, j, *kind, params.weight(*kind)});
      }
    }
    ASSERT_EQ(std::vector<MagEdge>(mag.edges().begin(), mag.edges().end()), expected) << "round " << round;
    // serial build is identical
    const auto serial = build_mag(a, b, seeds, params, BuildOptions{false});
    EXPECT_TRUE(std::equal(serial.edges().begin(), serial.edges().end(), mag.edges().begin(), mag.edges().end()));
  }
}

TEST(BuildMag, MatchCountNonIncreasingUnderNoise) {
  const auto base = generate_multilayer(SynthSpec{2, 300, 1, 0.3, 12});
  std::size_t prev = build_mag(base, base, identity_seeds(base, base), {}).count(K::kHomMatch);
  for (double f : {0.05, 0.1, 0.2}) {
    // nested removals: each level removes a superset
    const auto noisy = filter_edges(base, [&](std::size_t o) {
      return (o * 2654435761ULL % 1000) >= static_cast<std::size_t>(f * 1000);
    });
    const auto n = build_mag(base, noisy, identity_seeds(base, noisy), {}).count(K::kHomMatch);
    EXPECT_LE(n, prev);
    prev = n;
  }
}

TEST(BuildMag, FormatIsStable) {
  const auto a = make_net(2, {{0, "a", "b"}, {1, "u", "v"}}, {{0, "a", 1, "u"}});
  const auto b = make_net(2, {{0, "a", "b"}}, {}, {{1, "u"}, {1, "v"}});
  const auto mag = build_mag(a, b, identity_seeds(a, b), {});
  EXPECT_EQ(format_mag(mag, a, b),
            "#mulan-mag v1 layers=2 nodes=4 edges=3\n"
            "0\ta|a\t0\tb|b\thom_match\t1\n"
            "0\ta|a\t1\tu|u\thet_mismatch\t0.4\n"
            "1\tu|u\t1\tv|v\thom_mismatch\t0.5\n");
}

TEST(Seeds, ParseAndFormat) {
  const std::vector<std::string> lines{"#mulan-seeds v1", "0\ta\tb\t0.5", "1\tx\tx\t1"};
  const auto seeds = parse_seeds(lines);
  ASSERT_EQ(seeds.size(), 2U);
  EXPECT_EQ(seeds[0], (SeedPair{0, "a", "b", 0.5}));
  EXPECT_EQ(format_seeds(seeds), "#mulan-seeds v1\n0\ta\tb\t0.5\n1\tx\tx\t1\n");
  EXPECT_THROW((void)parse_seeds(std::vector<std::string>{"0\ta\tb\t1"}), ParseError);
  EXPECT_THROW((void)parse_seeds(std::vector<std::string>{"#mulan-seeds v1", "0\ta\tb"}), ParseError);
  EXPECT_THROW((void)parse_seeds(std::vector<std::string>{"#mulan-seeds v1", "0\ta\tb\tx"}), ParseError);
}

TEST(Seeds, IdentityRequiresEqualLabelSets) {
  const auto a = make_net(1, {{0, "a", "b"}});
  const auto b = make_net(1, {{0, "a", "c"}});
  EXPECT_THROW((void)identity_seeds(a, b), ValidationError);
  EXPECT_THROW((void)identity_seeds(a, make_net(2, {{0, "a", "b"}})), LayerMismatch);
  EXPECT_EQ(identity_seeds(a, a).size(), 2U);
}

}  // namespace
}  // namespace mulan

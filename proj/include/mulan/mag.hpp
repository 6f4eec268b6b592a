#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mulan/distance.hpp"
#include "mulan/network.hpp"
#include "mulan/seeds.hpp"

namespace mulan {

using MagNodeId = std::uint32_t;

enum class MagEdgeKind : std::uint8_t {
  kHomMatch,
  kHomMismatch,
  kHomGap,
  kHetMatch,
  kHetMismatch,
};

inline constexpr std::size_t kMagEdgeKindCount = 5;

[[nodiscard]] std::string_view to_string(MagEdgeKind kind);
[[nodiscard]] bool is_homogeneous(MagEdgeKind kind);

/// Gap threshold and the per-kind edge weights.
struct AlignmentParams {
  unsigned delta = 2;
  double w_match = 1.0;
  double w_mismatch = 0.5;
  double w_gap = 0.2;
  double w_hmatch = 0.9;
  double w_hmismatch = 0.4;

  /// Throws ValidationError unless delta >= 1, every weight is positive,
  /// w_match >= w_mismatch >= w_gap and w_hmatch >= w_hmismatch.
  void validate() const;
  [[nodiscard]] double weight(MagEdgeKind kind) const;

  /// Parses `m,mm,gap,hm,hmm`.
  void set_weights(std::string_view csv);
  [[nodiscard]] std::string weights_csv() const;
};

/// A node of the alignment graph: node `a` of the first network paired with
/// node `b` of the second, both in `layer`.
struct MagNode {
  LayerIndex layer = 0;
  NodeIndex a = 0;
  NodeIndex b = 0;
  double similarity = 1.0;

  auto operator<=>(const MagNode&) const = default;
};

struct MagEdge {
  MagNodeId u = 0;  // u < v
  MagNodeId v = 0;
  MagEdgeKind kind = MagEdgeKind::kHomMatch;
  double weight = 0.0;

  bool operator==(const MagEdge&) const = default;
};

class MultilayerAlignmentGraph {
 public:
  MultilayerAlignmentGraph(std::vector<MagNode> nodes, std::vector<MagEdge> edges, AlignmentParams params,
                           std::size_t layer_count);

  [[nodiscard]] std::size_t layer_count() const noexcept { return layer_count_; }
  [[nodiscard]] std::span<const MagNode> nodes() const noexcept { return nodes_; }
  [[nodiscard]] const MagNode& node(MagNodeId id) const { return nodes_.at(id); }
  [[nodiscard]] std::span<const MagEdge> edges() const noexcept { return edges_; }
  [[nodiscard]] const AlignmentParams& params() const noexcept { return params_; }
  [[nodiscard]] std::size_t count(MagEdgeKind kind) const { return kind_counts_.at(static_cast<std::size_t>(kind)); }

 private:
  std::vector<MagNode> nodes_;
  std::vector<MagEdge> edges_;
  AlignmentParams params_;
  std::size_t layer_count_;
  std::array<std::size_t, kMagEdgeKindCount> kind_counts_{};
};

/// Resolves seeds against both networks; one MAG node per seed, sorted by
/// (layer, a, b, similarity). Throws UnknownNode, DuplicateSeed, or
/// ValidationError for similarities outside (0, 1].
[[nodiscard]] std::vector<MagNode> build_mag_nodes(const MultilayerNetwork& net_a, const MultilayerNetwork& net_b,
                                                   const SeedPairs& seeds);

/// Homogeneous classification from the two in-layer distances (cap = delta):
/// match if both are 1; gap if one is 1 and the other in [2, delta]; mismatch
/// if one is 1 and the other beyond delta; otherwise no edge.
[[nodiscard]] std::optional<MagEdgeKind> classify_distances(BoundedDistance d_a, BoundedDistance d_b);

[[nodiscard]] std::optional<MagEdgeKind> classify_intra(const MultilayerNetwork& net_a,
                                                        const MultilayerNetwork& net_b, const MagNode& p,
                                                        const MagNode& q, unsigned delta);

/// Same, reusing per-layer probes (one per network) across many queries.
[[nodiscard]] std::optional<MagEdgeKind> classify_intra(const MultilayerNetwork& net_a,
                                                        const MultilayerNetwork& net_b, DistanceProbe& probe_a,
                                                        DistanceProbe& probe_b, const MagNode& p, const MagNode& q,
                                                        unsigned delta);

/// Heterogeneous classification: match if the inter edge exists in both
/// networks, mismatch if in exactly one, otherwise no edge.
[[nodiscard]] std::optional<MagEdgeKind> classify_inter(const MultilayerNetwork& net_a,
                                                        const MultilayerNetwork& net_b, const MagNode& p,
                                                        const MagNode& q);

struct BuildOptions {
  /// Build the per-layer alignment graphs on separate threads.
  bool parallel_layers = true;
};

/// Builds the multilayer alignment graph. Candidate MAG node pairs come from
/// the edges of either network, so the cost is proportional to edges times
/// seed multiplicity rather than to |seeds|^2.
[[nodiscard]] MultilayerAlignmentGraph build_mag(const MultilayerNetwork& net_a, const MultilayerNetwork& net_b,
                                                 const SeedPairs& seeds, const AlignmentParams& params,
                                                 BuildOptions options = {});

/// `a|b` pair label of a MAG node.
[[nodiscard]] std::string pair_label(const MultilayerNetwork& net_a, const MultilayerNetwork& net_b,
                                     const MagNode& node);

/// Edge-list serialization:
/// `<layer_a>\t<a1>|<a2>\t<layer_b>\t<b1>|<b2>\t<kind>\t<weight>`, in MAG edge order.
[[nodiscard]] std::string format_mag(const MultilayerAlignmentGraph& mag, const MultilayerNetwork& net_a,
                                     const MultilayerNetwork& net_b);

}  // namespace mulan

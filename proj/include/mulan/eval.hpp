#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mulan/mag.hpp"
#include "mulan/network.hpp"
#include "mulan/partition.hpp"
#include "mulan/seeds.hpp"

namespace mulan {

/// Per-layer sets of (node in first network, node in second network) pairs,
/// each sorted and duplicate-free. Used both for the mapping an alignment
/// induces and for the true mapping.
struct NodeMapping {
  std::vector<std::vector<std::pair<NodeIndex, NodeIndex>>> layers;

  [[nodiscard]] std::size_t size() const;
};

/// Pairs of every MAG node whose community has at least two members.
[[nodiscard]] NodeMapping extract_mapping(std::span<const std::uint32_t> assignment,
                                          const MultilayerAlignmentGraph& mag);
[[nodiscard]] NodeMapping extract_mapping(const Partition& p, const MultilayerAlignmentGraph& mag);

/// Resolves seed-format pairs against the two networks (UnknownNode on failure).
[[nodiscard]] NodeMapping mapping_from_seeds(const MultilayerNetwork& net_a, const MultilayerNetwork& net_b,
                                             const SeedPairs& seeds);

struct FncScore {
  double precision = 0.0;
  double recall = 0.0;
  double f_score = 0.0;
};

/// Node correctness of `aligned` against `truth` in one layer.
/// Throws EmptyTruth when the truth has no pair in that layer.
[[nodiscard]] FncScore f_nc(const NodeMapping& aligned, const NodeMapping& truth, LayerIndex layer);

struct NcvGs3 {
  double ncv = 0.0;
  double gs3 = 0.0;
  double combined = 0.0;
};

/// Node coverage, generalized S3 over the induced intra-layer subgraphs, and
/// their geometric mean for one layer.
[[nodiscard]] NcvGs3 ncv_gs3(const MultilayerNetwork& net_a, const MultilayerNetwork& net_b,
                             const NodeMapping& aligned, LayerIndex layer);

/// The same measure over all inter-layer edges and all aligned nodes pooled.
/// Throws SingleLayer for one-layer networks.
[[nodiscard]] NcvGs3 ncv_gs3_inter(const MultilayerNetwork& net_a, const MultilayerNetwork& net_b,
                                   const NodeMapping& aligned);

/// Unweighted mean of per-layer values (F-NC_m, NCV-GS3_m).
[[nodiscard]] double layer_mean(std::span<const double> per_layer);

struct EvalReport {
  std::vector<FncScore> layer_fnc;
  std::vector<NcvGs3> layer_ncv_gs3;
  double fnc_m = 0.0;
  double fnc_precision_m = 0.0;
  double fnc_recall_m = 0.0;
  double ncv_gs3_m = 0.0;
  std::optional<double> ncv_gs3_inter;  // absent for single-layer inputs
  std::uint32_t n_communities = 0;
  double modularity = 0.0;
  double runtime_seconds = 0.0;
};

/// Computes every metric for one alignment. Layers whose truth is empty are
/// scored zero.
[[nodiscard]] EvalReport evaluate(const MultilayerNetwork& net_a, const MultilayerNetwork& net_b,
                                  const NodeMapping& aligned, const NodeMapping& truth);

/// Header of the report TSV.
[[nodiscard]] std::string_view report_header();
[[nodiscard]] std::string format_report_row(std::string_view network, std::string_view noise,
                                            std::string_view detector, const EvalReport& r);
/// Human-readable multi-line summary.
[[nodiscard]] std::string format_report_summary(const EvalReport& r);

}  // namespace mulan

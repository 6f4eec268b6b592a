#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mulan/error.hpp"
#include "mulan/eval.hpp"
#include "mulan/mag.hpp"
#include "mulan/partition.hpp"
#include "mulan/seeds.hpp"
#include "mulan/synth.hpp"

namespace mulan {

/// Derivation of every random stream from one root seed, so that each
/// (network, noise level, detector) cell is reproducible on its own.
struct SeedPlan {
  std::uint64_t root = 0;

  [[nodiscard]] std::uint64_t network(std::uint32_t index) const;
  [[nodiscard]] std::uint64_t noise(std::uint32_t index, double noise_percent) const;
  [[nodiscard]] std::uint64_t detector(std::uint32_t index, double noise_percent, Detector d) const;
};

/// File-name friendly noise label: 5 -> "5", 2.5 -> "2.5".
[[nodiscard]] std::string noise_label(double noise_percent);

/// Base network of benchmark instance `index` and its noisy copy.
[[nodiscard]] MultilayerNetwork make_base_network(const SynthSpec& shape, const SeedPlan& plan, std::uint32_t index);
[[nodiscard]] MultilayerNetwork make_noisy_network(const MultilayerNetwork& base, const SeedPlan& plan,
                                                   std::uint32_t index, double noise_percent);
/// `#gen` comment rows recorded in generated network files.
[[nodiscard]] std::vector<std::string> generation_comments(const SynthSpec& shape, const SeedPlan& plan,
                                                           std::uint32_t index, std::optional<double> noise_percent);

/// One alignment: MAG construction followed by community detection.
struct AlignmentRun {
  MultilayerAlignmentGraph mag;
  Partition partition;
  double mag_seconds = 0.0;
  double detect_seconds = 0.0;
};

[[nodiscard]] AlignmentRun run_alignment(const MultilayerNetwork& net_a, const MultilayerNetwork& net_b,
                                         const SeedPairs& seeds, const AlignmentParams& params, Detector detector,
                                         std::uint64_t seed);

struct PipelineConfig {
  SynthSpec shape;  // rng_seed is ignored; streams come from `plan`
  SeedPlan plan;
  std::uint32_t networks = 10;
  std::vector<double> noise_percents{0, 5, 10, 15, 20, 25};
  std::vector<Detector> detectors{Detector::kLouvain};
  AlignmentParams params;
  unsigned jobs = 1;
  /// When set, networks, MAGs, communities, report.tsv and timings.tsv are
  /// written below this directory.
  std::optional<std::filesystem::path> out_dir;
};

struct CellResult {
  std::uint32_t network = 0;  // 0-based; reported as N<network + 1>
  double noise_percent = 0.0;
  Detector detector = Detector::kLouvain;
  EvalReport report;
  double mag_seconds = 0.0;
  double detect_seconds = 0.0;
  std::optional<std::string> error;
  ExitCode error_code = ExitCode::kOk;
};

/// Runs generate -> align -> eval for every (network, noise, detector) cell.
/// A failing cell is recorded with its error and the others still run.
/// Results come back in (network, noise, detector) order regardless of `jobs`.
[[nodiscard]] std::vector<CellResult> run_pipeline(const PipelineConfig& config);

[[nodiscard]] std::string network_name(std::uint32_t index);
[[nodiscard]] std::string format_pipeline_report(const std::vector<CellResult>& cells);
[[nodiscard]] std::string format_pipeline_timings(const std::vector<CellResult>& cells);

}  // namespace mulan

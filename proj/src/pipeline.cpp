#include "mulan/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include <fmt/format.h>

#include "mulan/community.hpp"
#include "mulan/network_io.hpp"
#include "mulan/tsv.hpp"

namespace mulan {

namespace {

// stream tags for Rng::derive
constexpr std::uint64_t kNoiseTag = 0x6e6f697365000000ULL;
constexpr std::uint64_t kDetectorTag = 0x6465746563740000ULL;

std::uint64_t noise_key(double noise_percent) {
  return static_cast<std::uint64_t>(std::llround(noise_percent * 1000.0));
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::filesystem::path cell_dir(const std::filesystem::path& out, std::uint32_t index, double noise_percent) {
  return out / "cells" / fmt::format("{}_noise{}", network_name(index), noise_label(noise_percent));
}

std::filesystem::path network_path(const std::filesystem::path& out, std::uint32_t index,
                                   std::optional<double> noise_percent) {
  const auto dir = out / "networks" / network_name(index);
  return noise_percent ? dir / fmt::format("noise{}.tsv", noise_label(*noise_percent)) : dir / "base.tsv";
}

}  // namespace

std::uint64_t SeedPlan::network(std::uint32_t index) const { return Rng::derive(root, index); }

std::uint64_t SeedPlan::noise(std::uint32_t index, double noise_percent) const {
  return Rng::derive(network(index), kNoiseTag + noise_key(noise_percent));
}

std::uint64_t SeedPlan::detector(std::uint32_t index, double noise_percent, Detector d) const {
  return Rng::derive(noise(index, noise_percent), kDetectorTag + static_cast<std::uint64_t>(d));
}

std::string noise_label(double noise_percent) { return tsv::format_shortest(noise_percent); }

std::string network_name(std::uint32_t index) { return fmt::format("N{}", index + 1); }

MultilayerNetwork make_base_network(const SynthSpec& shape, const SeedPlan& plan, std::uint32_t index) {
  SynthSpec spec = shape;
  spec.rng_seed = plan.network(index);
  return generate_multilayer(spec);
}

MultilayerNetwork make_noisy_network(const MultilayerNetwork& base, const SeedPlan& plan, std::uint32_t index,
                                     double noise_percent) {
  return perturb(base, NoiseSpec{noise_percent / 100.0, plan.noise(index, noise_percent)});
}

std::vector<std::string> generation_comments(const SynthSpec& shape, const SeedPlan& plan, std::uint32_t index,
                                             std::optional<double> noise_percent) {
  std::vector<std::string> c;
  c.push_back(fmt::format("gen seed={} spec={} root={} index={}", plan.network(index), shape.describe(),
                          plan.root, index));
  if (noise_percent) {
    c.push_back(fmt::format("noise seed={} percent={}", plan.noise(index, *noise_percent),
                            noise_label(*noise_percent)));
  }
  return c;
}

AlignmentRun run_alignment(const MultilayerNetwork& net_a, const MultilayerNetwork& net_b, const SeedPairs& seeds,
                           const AlignmentParams& params, Detector detector, std::uint64_t seed) {
  auto start = std::chrono::steady_clock::now();
  MultilayerAlignmentGraph mag = build_mag(net_a, net_b, seeds, params);
  const double mag_seconds = seconds_since(start);

  start = std::chrono::steady_clock::now();
  Partition partition;
  const WeightedFlatGraph flat = WeightedFlatGraph::from_mag(mag);
  if (flat.total_weight() > 0.0) {
    partition = detect(flat, detector, seed);
  } else {
    // no MAG edge: every node is its own community
    partition.assignment.resize(mag.nodes().size());
    for (std::uint32_t i = 0; i < partition.assignment.size(); ++i) partition.assignment[i] = i;
    partition.n_communities = static_cast<std::uint32_t>(partition.assignment.size());
    partition.algorithm = detector;
    partition.rng_seed = seed;
  }
  const double detect_seconds = seconds_since(start);
  return AlignmentRun{std::move(mag), std::move(partition), mag_seconds, detect_seconds};
}

std::vector<CellResult> run_pipeline(const PipelineConfig& config) {
  config.shape.validate();
  config.params.validate();
  for (double noise : config.noise_percents) NoiseSpec{noise / 100.0, 0}.validate();

  const std::size_t per_network = config.noise_percents.size() * config.detectors.size();
  std::vector<CellResult> cells(config.networks * per_network);
  for (std::uint32_t i = 0; i < config.networks; ++i) {
    for (std::size_t j = 0; j < config.noise_percents.size(); ++j) {
      for (std::size_t d = 0; d < config.detectors.size(); ++d) {
        CellResult& c = cells[i * per_network + j * config.detectors.size() + d];
        c.network = i;
        c.noise_percent = config.noise_percents[j];
        c.detector = config.detectors[d];
      }
    }
  }

  // one work unit per (network, noise): the MAG is shared by all detectors
  const std::size_t units = config.networks * config.noise_percents.size();
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t u = next++; u < units; u = next++) {
      const auto index = static_cast<std::uint32_t>(u / config.noise_percents.size());
      const std::size_t j = u % config.noise_percents.size();
      const double noise = config.noise_percents[j];
      CellResult* first = &cells[u * config.detectors.size()];
      try {
        const MultilayerNetwork base = make_base_network(config.shape, config.plan, index);
        const MultilayerNetwork noisy = make_noisy_network(base, config.plan, index, noise);
        if (config.out_dir) {
          if (j == 0) {
            save_network(base, network_path(*config.out_dir, index, std::nullopt),
                         generation_comments(config.shape, config.plan, index, std::nullopt));
          }
          save_network(noisy, network_path(*config.out_dir, index, noise),
                       generation_comments(config.shape, config.plan, index, noise));
        }
        const SeedPairs seeds = identity_seeds(base, noisy);
        const NodeMapping truth = mapping_from_seeds(base, noisy, seeds);

        for (std::size_t d = 0; d < config.detectors.size(); ++d) {
          CellResult& cell = first[d];
          try {
            const std::uint64_t seed = config.plan.detector(index, noise, cell.detector);
            AlignmentRun run = run_alignment(base, noisy, seeds, config.params, cell.detector, seed);
            cell.mag_seconds = run.mag_seconds;
            cell.detect_seconds = run.detect_seconds;
            cell.report = evaluate(base, noisy, extract_mapping(run.partition, run.mag), truth);
            cell.report.n_communities = run.partition.n_communities;
            cell.report.modularity = run.partition.modularity;
            cell.report.runtime_seconds = run.mag_seconds + run.detect_seconds;
            if (config.out_dir) {
              const auto dir = cell_dir(*config.out_dir, index, noise);
              if (d == 0) tsv::write_file(dir / "mag.tsv", format_mag(run.mag, base, noisy));
              tsv::write_file(dir / fmt::format("communities_{}.tsv", to_string(cell.detector)),
                              format_communities(run.partition, run.mag, base, noisy));
            }
          } catch (const Error& e) {
            cell.error = e.what();
            cell.error_code = e.code();
          } catch (const std::exception& e) {
            cell.error = e.what();
            cell.error_code = ExitCode::kInternal;
          }
        }
      } catch (const Error& e) {
        for (std::size_t d = 0; d < config.detectors.size(); ++d) {
          first[d].error = e.what();
          first[d].error_code = e.code();
        }
      } catch (const std::exception& e) {
        for (std::size_t d = 0; d < config.detectors.size(); ++d) {
          first[d].error = e.what();
          first[d].error_code = ExitCode::kInternal;
        }
      }
    }
  };

  const unsigned jobs = std::max(1U, std::min<unsigned>(config.jobs, static_cast<unsigned>(std::max<std::size_t>(units, 1))));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }

  if (config.out_dir) {
    tsv::write_file(*config.out_dir / "report.tsv", format_pipeline_report(cells));
    tsv::write_file(*config.out_dir / "timings.tsv", format_pipeline_timings(cells));
  }
  return cells;
}

std::string format_pipeline_report(const std::vector<CellResult>& cells) {
  std::string out = fmt::format("{}\n", report_header());
  for (const CellResult& c : cells) {
    if (c.error) continue;
    out += format_report_row(network_name(c.network), noise_label(c.noise_percent), to_string(c.detector),
                             c.report);
    out += '\n';
  }
  return out;
}

std::string format_pipeline_timings(const std::vector<CellResult>& cells) {
  std::string out = "network\tnoise\tdetector\tmag_seconds\tdetect_seconds\n";
  for (const CellResult& c : cells) {
    if (c.error) continue;
    out += fmt::format("{}\t{}\t{}\t{:.6f}\t{:.6f}\n", network_name(c.network), noise_label(c.noise_percent),
                       to_string(c.detector), c.mag_seconds, c.detect_seconds);
  }
  return out;
}

}  // namespace mulan

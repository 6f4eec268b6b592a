// mulan: command-line front end for multilayer network alignment.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "mulan/community.hpp"
#include "mulan/error.hpp"
#include "mulan/eval.hpp"
#include "mulan/flat_graph.hpp"
#include "mulan/mag.hpp"
#include "mulan/network_io.hpp"
#include "mulan/pipeline.hpp"
#include "mulan/seeds.hpp"
#include "mulan/synth.hpp"
#include "mulan/tsv.hpp"

namespace fs = std::filesystem;
using namespace mulan;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  fs::path out = ".";
};

struct ShapeFlags {
  std::uint32_t layers = 2;
  std::uint32_t nodes = 1000;
  std::uint32_t ba_m = 1;
  double inter_frac = 0.30;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--layers", layers, "number of layers")->capture_default_str();
    cmd->add_option("--nodes", nodes, "nodes per layer")->capture_default_str();
    cmd->add_option("--ba-m", ba_m, "edges attached per new node")->capture_default_str();
    cmd->add_option("--inter-frac", inter_frac, "inter edges per adjacent layer pair, as a fraction of layer edges")
        ->capture_default_str();
  }
  [[nodiscard]] SynthSpec spec() const { return SynthSpec{layers, nodes, ba_m, inter_frac, 0}; }
};

struct AlignFlags {
  std::string seeds = "identity";
  unsigned delta = 2;
  std::string weights = "1,0.5,0.2,0.9,0.4";

  void add_to(CLI::App* cmd) {
    cmd->add_option("--seeds", seeds, "seed file, or 'identity'")->capture_default_str();
    cmd->add_option("--delta", delta, "gap threshold")->capture_default_str();
    cmd->add_option("--weights", weights, "m,mm,gap,hm,hmm")->capture_default_str();
  }
  [[nodiscard]] AlignmentParams params() const {
    AlignmentParams p;
    p.delta = delta;
    p.set_weights(weights);
    p.validate();
    return p;
  }
};

std::vector<double> parse_noise_list(const std::string& csv) {
  std::vector<double> out;
  if (csv.empty()) return out;
  for (auto field : tsv::split(csv, ',')) {
    try {
      out.push_back(tsv::parse_double(field, 0, "noise level"));
    } catch (const ParseError&) {
      throw ValidationError(fmt::format("bad noise level '{}'", field));
    }
    NoiseSpec{out.back() / 100.0, 0}.validate();
  }
  return out;
}

SeedPairs resolve_seeds(const std::string& flag, const MultilayerNetwork& a, const MultilayerNetwork& b) {
  if (flag == "identity") return identity_seeds(a, b);
  return load_seeds(flag);
}

void require_same_layers(const MultilayerNetwork& a, const MultilayerNetwork& b) {
  if (a.layer_count() != b.layer_count()) {
    throw LayerMismatch(fmt::format("first network has {} layers, second has {}", a.layer_count(), b.layer_count()));
  }
}

int cmd_generate(const Globals& g, const ShapeFlags& shape, const std::string& noise_csv, std::uint32_t index) {
  const SynthSpec spec = shape.spec();
  spec.validate();
  const auto noise = parse_noise_list(noise_csv);
  const SeedPlan plan{g.seed};

  const MultilayerNetwork base = make_base_network(spec, plan, index);
  const fs::path base_path = g.out / "base.tsv";
  save_network(base, base_path, generation_comments(spec, plan, index, std::nullopt));
  fmt::print("{}\tseed={}\tnodes={}\tedges={}\n", base_path.string(), plan.network(index), base.node_count(),
             base.edge_count());

  for (double pct : noise) {
    const MultilayerNetwork noisy = make_noisy_network(base, plan, index, pct);
    const fs::path path = g.out / fmt::format("noise{}.tsv", noise_label(pct));
    save_network(noisy, path, generation_comments(spec, plan, index, pct));
    fmt::print("{}\tseed={}\tnodes={}\tedges={}\n", path.string(), plan.noise(index, pct), noisy.node_count(),
               noisy.edge_count());
  }
  return 0;
}

int cmd_align(const Globals& g, const fs::path& p1, const fs::path& p2, const AlignFlags& flags,
              const std::string& detector_name) {
  const Detector detector = parse_detector(detector_name);
  const AlignmentParams params = flags.params();
  const MultilayerNetwork a = load_network(p1);
  const MultilayerNetwork b = load_network(p2);
  require_same_layers(a, b);
  const SeedPairs seeds = resolve_seeds(flags.seeds, a, b);
  spdlog::info("aligning {} with {} ({} seeds, detector {})", p1.string(), p2.string(), seeds.size(), detector_name);

  const AlignmentRun run = run_alignment(a, b, seeds, params, detector, g.seed);
  spdlog::info("MAG: {} nodes, {} edges in {:.3f} s", run.mag.nodes().size(), run.mag.edges().size(),
               run.mag_seconds);

  tsv::write_file(g.out / "communities.tsv", format_communities(run.partition, run.mag, a, b));
  tsv::write_file(g.out / "mag.tsv", format_mag(run.mag, a, b));

  std::string summary;
  auto row = [&summary](std::string_view key, const std::string& value) {
    summary += fmt::format("{}\t{}\n", key, value);
  };
  row("detector", std::string(to_string(detector)));
  row("seed", std::to_string(g.seed));
  row("delta", std::to_string(params.delta));
  row("weights", params.weights_csv());
  row("mag_nodes", std::to_string(run.mag.nodes().size()));
  row("mag_edges", std::to_string(run.mag.edges().size()));
  for (std::size_t k = 0; k < kMagEdgeKindCount; ++k) {
    const auto kind = static_cast<MagEdgeKind>(k);
    row(fmt::format("edges_{}", to_string(kind)), std::to_string(run.mag.count(kind)));
  }
  row("communities", std::to_string(run.partition.n_communities));
  row("modularity", tsv::format_fixed(run.partition.modularity, 6));
  row("quality", tsv::format_fixed(run.partition.quality, 6));
  row("mag_seconds", tsv::format_fixed(run.mag_seconds, 6));
  row("detect_seconds", tsv::format_fixed(run.detect_seconds, 6));
  row("runtime_seconds", tsv::format_fixed(run.mag_seconds + run.detect_seconds, 6));
  tsv::write_file(g.out / "summary.tsv", summary);
  std::cout << summary;
  return 0;
}

int cmd_eval(const Globals& g, const fs::path& p1, const fs::path& p2, const fs::path& communities_path,
             const AlignFlags& flags, const std::string& truth_flag, const std::string& name,
             const std::string& noise) {
  const AlignmentParams params = flags.params();
  const MultilayerNetwork a = load_network(p1);
  const MultilayerNetwork b = load_network(p2);
  require_same_layers(a, b);
  const SeedPairs seeds = resolve_seeds(flags.seeds, a, b);
  const SeedPairs truth_seeds = truth_flag == flags.seeds ? seeds : resolve_seeds(truth_flag, a, b);
  const MultilayerAlignmentGraph mag = build_mag(a, b, seeds, params);

  const auto listed = parse_communities(tsv::read_lines(communities_path), mag, a, b);
  // Unlisted MAG nodes become singletons, which contribute nothing to the mapping.
  std::vector<std::uint32_t> assignment(listed.size());
  std::uint32_t next = 0;
  bool any = false;
  for (const auto& c : listed) {
    if (c) {
      next = std::max(next, *c + 1);
      any = true;
    }
  }
  for (std::size_t i = 0; i < listed.size(); ++i) assignment[i] = listed[i] ? *listed[i] : next++;
  const std::uint32_t n_communities = normalize_assignment(assignment);

  EvalReport report = evaluate(a, b, extract_mapping(assignment, mag), mapping_from_seeds(a, b, truth_seeds));
  const WeightedFlatGraph flat = WeightedFlatGraph::from_mag(mag);
  report.n_communities = any ? n_communities : 0;
  report.modularity = any && flat.total_weight() > 0.0 ? modularity(flat, assignment) : 0.0;

  tsv::write_file(g.out / "report.tsv", fmt::format("{}\n{}\n", report_header(),
                                                    format_report_row(name, noise, "file", report)));
  std::cout << format_report_summary(report);
  return 0;
}

int cmd_pipeline(const Globals& g, const ShapeFlags& shape, std::uint32_t networks, const std::string& noise_csv,
                 const std::string& detector_name, const AlignFlags& flags) {
  PipelineConfig config;
  config.shape = shape.spec();
  config.plan = SeedPlan{g.seed};
  config.networks = networks;
  config.noise_percents = parse_noise_list(noise_csv);
  if (detector_name == "all") {
    config.detectors = {Detector::kLouvain, Detector::kGreedy, Detector::kInfomap};
  } else {
    config.detectors = {parse_detector(detector_name)};
  }
  config.params = flags.params();
  config.jobs = g.jobs;
  config.out_dir = g.out;

  const auto cells = run_pipeline(config);
  int status = 0;
  for (const CellResult& c : cells) {
    if (!c.error) continue;
    spdlog::error("cell {} noise {} {}: {}", network_name(c.network), noise_label(c.noise_percent),
                  to_string(c.detector), *c.error);
    status = std::max(status, static_cast<int>(c.error_code));
  }
  std::cout << format_pipeline_report(cells);
  spdlog::info("report written to {}", (g.out / "report.tsv").string());
  return status;
}

void setup_logging() {
  auto logger = spdlog::stderr_logger_mt("mulan");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("MULAN_LOG")) spdlog::set_level(spdlog::level::from_str(env));
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();

  CLI::App app{"Local alignment of two multilayer networks"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "root random seed")->capture_default_str();
  app.add_option("--jobs", g.jobs, "concurrent pipeline cells")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("-o,--out", g.out, "output directory")->capture_default_str();

  ShapeFlags shape;
  AlignFlags align_flags;
  std::string noise_csv = "5,10,15,20,25";
  std::uint32_t index = 0;
  auto* gen = app.add_subcommand("generate", "generate a synthetic network and noisy copies");
  shape.add_to(gen);
  gen->add_option("--noise", noise_csv, "comma-separated noise percentages")->capture_default_str();
  gen->add_option("--index", index, "network index within the seed plan")->capture_default_str();

  fs::path net1, net2, communities;
  std::string detector = "louvain";
  auto* align = app.add_subcommand("align", "align two networks and detect communities");
  align->add_option("net1", net1)->required();
  align->add_option("net2", net2)->required();
  align_flags.add_to(align);
  align->add_option("--detector", detector, "louvain|greedy|infomap")->capture_default_str();

  std::string truth = "identity", name = "-", noise_name = "-";
  auto* eval = app.add_subcommand("eval", "score a communities file");
  eval->add_option("net1", net1)->required();
  eval->add_option("net2", net2)->required();
  eval->add_option("communities", communities)->required();
  align_flags.add_to(eval);
  eval->add_option("--truth", truth, "true mapping as a seed file, or 'identity'")->capture_default_str();
  eval->add_option("--name", name, "network column of the report")->capture_default_str();
  eval->add_option("--noise", noise_name, "noise column of the report")->capture_default_str();

  std::uint32_t networks = 10;
  std::string pipe_noise = "0,5,10,15,20,25";
  auto* pipe = app.add_subcommand("pipeline", "generate, align and evaluate a full benchmark sweep");
  shape.add_to(pipe);
  align_flags.add_to(pipe);
  pipe->add_option("--networks", networks, "number of base networks")->capture_default_str();
  pipe->add_option("--noise", pipe_noise, "comma-separated noise percentages")->capture_default_str();
  pipe->add_option("--detector", detector, "louvain|greedy|infomap|all")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : static_cast<int>(ExitCode::kValidation);
  }

  try {
    if (gen->parsed()) return cmd_generate(g, shape, noise_csv, index);
    if (align->parsed()) return cmd_align(g, net1, net2, align_flags, detector);
    if (eval->parsed()) return cmd_eval(g, net1, net2, communities, align_flags, truth, name, noise_name);
    if (pipe->parsed()) return cmd_pipeline(g, shape, networks, pipe_noise, detector, align_flags);
  } catch (const Error& e) {
    const auto code = static_cast<int>(e.code());
    const char* kind = e.code() == ExitCode::kIo ? "io" : e.code() == ExitCode::kValidation ? "validation" : "internal";
    fmt::print(stderr, "error[{}]: {}\n", kind, e.what());
    return code;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error[internal]: {}\n", e.what());
    return static_cast<int>(ExitCode::kInternal);
  }
  return static_cast<int>(ExitCode::kInternal);
}

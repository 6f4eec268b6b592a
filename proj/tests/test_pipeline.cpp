#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "mulan/pipeline.hpp"
#include "mulan/tsv.hpp"
#include "test_util.hpp"

namespace mulan {
namespace {

namespace fs = std::filesystem;

PipelineConfig small_config() {
  PipelineConfig c;
  c.shape = SynthSpec{2, 150, 1, 0.3, 0};
  c.plan = SeedPlan{42};
  c.networks = 2;
  c.noise_percents = {0, 25};
  c.detectors = {Detector::kLouvain, Detector::kGreedy, Detector::kInfomap};
  return c;
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

TEST(SeedPlan, StreamsAreDistinctAndStable) {
  const SeedPlan p{7};
  EXPECT_EQ(p.network(0), SeedPlan{7}.network(0));
  EXPECT_NE(p.network(0), p.network(1));
  EXPECT_NE(p.noise(0, 5), p.noise(0, 10));
  EXPECT_NE(p.noise(0, 5), p.noise(1, 5));
  EXPECT_NE(p.detector(0, 5, Detector::kLouvain), p.detector(0, 5, Detector::kInfomap));
  EXPECT_NE(p.detector(0, 5, Detector::kLouvain), p.detector(0, 10, Detector::kLouvain));
}

TEST(Pipeline, NoiseLabels) {
  EXPECT_EQ(noise_label(5), "5");
  EXPECT_EQ(noise_label(0), "0");
  EXPECT_EQ(noise_label(2.5), "2.5");
  EXPECT_EQ(network_name(0), "N1");
}

TEST(Pipeline, RowCounts) {
  PipelineConfig c = small_config();
  c.detectors = {Detector::kLouvain};
  auto cells = run_pipeline(c);
  EXPECT_EQ(cells.size(), 4U);
  c.networks = 1;
  c.noise_percents = {0};
  cells = run_pipeline(c);
  ASSERT_EQ(cells.size(), 1U);
  const auto report = format_pipeline_report(cells);
  EXPECT_EQ(std::count(report.begin(), report.end(), '\n'), 2);
  EXPECT_TRUE(report.starts_with(std::string(report_header()) + "\n"));
}

TEST(Pipeline, DefaultsGiveSixtyRowsPerDetector) {
  PipelineConfig c;
  c.shape = SynthSpec{2, 60, 1, 0.3, 0};  // small shape; the row count is what matters
  c.plan = SeedPlan{1};
  c.detectors = {Detector::kLouvain, Detector::kGreedy};
  ASSERT_EQ(c.networks, 10U);
  ASSERT_EQ(c.noise_percents.size(), 6U);
  const auto cells = run_pipeline(c);
  EXPECT_EQ(cells.size(), 120U);
  for (const auto& cell : cells) EXPECT_FALSE(cell.error.has_value());
}

TEST(Pipeline, ByteIdenticalAcrossRunsAndJobCounts) {
  testing::TempDir d1("pipe1"), d2("pipe2");
  PipelineConfig c = small_config();
  c.out_dir = d1.path();
  c.jobs = 1;
  (void)run_pipeline(c);
  c.out_dir = d2.path();
  c.jobs = 3;
  (void)run_pipeline(c);
  auto a = snapshot(d1.path());
  auto b = snapshot(d2.path());
  ASSERT_TRUE(a.contains("report.tsv"));
  ASSERT_TRUE(a.contains("networks/N1/base.tsv"));
  ASSERT_TRUE(a.contains("networks/N2/noise25.tsv"));
  ASSERT_TRUE(a.contains("cells/N1_noise25/mag.tsv"));
  ASSERT_TRUE(a.contains("cells/N2_noise0/communities_infomap.tsv"));
  // timings legitimately differ
  a.erase("timings.tsv");
  b.erase("timings.tsv");
  EXPECT_EQ(a, b);
}

TEST(Pipeline, SelfAlignmentCellsAreNearPerfect) {
  PipelineConfig c = small_config();
  c.noise_percents = {0};
  for (const auto& cell : run_pipeline(c)) {
    ASSERT_FALSE(cell.error.has_value()) << *cell.error;
    EXPECT_GE(cell.report.fnc_m, 0.95);
    EXPECT_GT(cell.report.modularity, 0.5);
  }
}

TEST(Pipeline, InvalidNoiseRejectedUpFront) {
  PipelineConfig c = small_config();
  c.noise_percents = {0, 150};  // 150% is invalid noise
  EXPECT_THROW((void)run_pipeline(c), ValidationError);
}

TEST(Pipeline, GenerationCommentsCarrySeed) {
  const SeedPlan plan{9};
  const SynthSpec shape{2, 10, 1, 0.3, 0};
  const auto c = generation_comments(shape, plan, 0, std::nullopt);
  ASSERT_FALSE(c.empty());
  EXPECT_TRUE(c[0].starts_with("gen seed=" + std::to_string(plan.network(0)) + " spec=layers=2,n=10,m=1,inter=0.3"));
  EXPECT_EQ(generation_comments(shape, plan, 0, 5.0).size(), 2U);
}

}  // namespace
}  // namespace mulan

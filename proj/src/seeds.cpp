#include "mulan/seeds.hpp"

#include <algorithm>
#include <ranges>

#include <fmt/format.h>

#include "mulan/error.hpp"
#include "mulan/tsv.hpp"

namespace mulan {

namespace {
constexpr std::string_view kHeader = "#mulan-seeds v1";
}

SeedPairs parse_seeds(std::span<const std::string> lines) {
  if (lines.empty() || lines[0] != kHeader) throw ParseError(1, "missing '#mulan-seeds v1' header");
  SeedPairs seeds;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    std::string_view line = lines[i];
    if (line.starts_with('#')) continue;
    if (line.ends_with('\r')) throw ParseError(lineno, "CR line ending (expected LF)");
    if (line.empty()) throw ParseError(lineno, "empty line");
    const auto f = tsv::split(line);
    if (f.size() != 4) throw ParseError(lineno, fmt::format("expected 4 tab-separated fields, got {}", f.size()));
    SeedPair s;
    s.layer = static_cast<LayerIndex>(tsv::parse_uint(f[0], lineno, "layer index"));
    s.node_a = f[1];
    s.node_b = f[2];
    s.similarity = tsv::parse_double(f[3], lineno, "similarity");
    seeds.push_back(std::move(s));
  }
  return seeds;
}

SeedPairs load_seeds(const std::filesystem::path& path) {
  const auto lines = tsv::read_lines(path);
  try {
    return parse_seeds(lines);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::string format_seeds(const SeedPairs& seeds) {
  std::string out = fmt::format("{}\n", kHeader);
  for (const auto& s : seeds) {
    out += fmt::format("{}\t{}\t{}\t{}\n", s.layer, s.node_a, s.node_b, tsv::format_shortest(s.similarity));
  }
  return out;
}

SeedPairs identity_seeds(const MultilayerNetwork& a, const MultilayerNetwork& b) {
  if (a.layer_count() != b.layer_count()) {
    throw LayerMismatch(fmt::format("{} vs {} layers", a.layer_count(), b.layer_count()));
  }
  SeedPairs seeds;
  for (LayerIndex l = 0; l < a.layer_count(); ++l) {
    const auto la = a.layer(l).labels();
    const auto lb = b.layer(l).labels();
    if (!std::ranges::equal(la, lb)) {
      throw ValidationError(fmt::format("identity seeds need equal node label sets; layer {} differs", l));
    }
    for (const auto& label : la) seeds.push_back({l, label, label, 1.0});
  }
  return seeds;
}

}  // namespace mulan

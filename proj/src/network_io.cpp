#include "mulan/network_io.hpp"

#include <fmt/format.h>

#include "mulan/error.hpp"
#include "mulan/tsv.hpp"

namespace mulan {

namespace {

constexpr std::string_view kHeaderPrefix = "#mulan-net v1 layers=";

LayerIndex parse_layer(std::string_view field, std::size_t line) {
  const auto v = tsv::parse_uint(field, line, "layer index");
  if (v > 0xffffU) throw ParseError(line, fmt::format("layer index {} too large", v));
  return static_cast<LayerIndex>(v);
}

}  // namespace

MultilayerNetwork parse_network(std::span<const std::string> lines) {
  if (lines.empty() || !std::string_view(lines[0]).starts_with(kHeaderPrefix)) {
    throw ParseError(1, "missing '#mulan-net v1 layers=<k>' header");
  }
  const auto k = tsv::parse_uint(std::string_view(lines[0]).substr(kHeaderPrefix.size()), 1, "layer count");
  if (k > 0xffffU) throw ParseError(1, "layer count too large");

  NetworkBuilder builder(k);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    std::string_view line = lines[i];
    if (line.starts_with('#')) continue;
    if (line.ends_with('\r')) throw ParseError(lineno, "CR line ending (expected LF)");
    if (line.empty()) throw ParseError(lineno, "empty line");

    const auto f = tsv::split(line);
    if (f.size() != 5) throw ParseError(lineno, fmt::format("expected 5 tab-separated fields, got {}", f.size()));
    try {
      if (f[0] == "intra" || f[0] == "inter") {
        const LayerIndex la = parse_layer(f[1], lineno);
        const LayerIndex lb = parse_layer(f[3], lineno);
        bool added = false;
        if (f[0] == "intra") {
          if (la != lb) {
            throw ValidationError(fmt::format("intra edge spans layers {} and {}", la, lb));
          }
          added = builder.add_intra_edge(la, f[2], f[4]);
        } else {
          added = builder.add_inter_edge(la, f[2], lb, f[4]);
        }
        if (!added) throw ValidationError("duplicate edge");
      } else if (f[0] == "node") {
        if (f[3] != "-" || f[4] != "-") throw ParseError(lineno, "node rows must end with '-\\t-'");
        if (!builder.add_node(parse_layer(f[1], lineno), f[2])) {
          throw ValidationError(fmt::format("node '{}' declared twice", f[2]));
        }
      } else {
        throw ParseError(lineno, fmt::format("unknown row kind '{}'", f[0]));
      }
    } catch (const ParseError&) {
      throw;
    } catch (const ValidationError& e) {
      throw ValidationError(fmt::format("line {}: {}", lineno, e.what()));
    }
  }
  return builder.build();
}

MultilayerNetwork load_network(const std::filesystem::path& path) {
  const auto lines = tsv::read_lines(path);
  try {
    return parse_network(lines);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), fmt::format("{}: {}", path.string(), e.what()));
  } catch (const ValidationError& e) {
    throw ValidationError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::string format_network(const MultilayerNetwork& net, std::span<const std::string> comments) {
  std::string out = fmt::format("{}{}\n", kHeaderPrefix, net.layer_count());
  for (const auto& c : comments) out += fmt::format("#{}\n", c);

  for (LayerIndex l = 0; l < net.layer_count(); ++l) {
    const Layer& layer = net.layer(l);
    for (const IntraEdge& e : layer.edges()) {
      out += fmt::format("intra\t{}\t{}\t{}\t{}\n", l, layer.label(e.u), l, layer.label(e.v));
    }
  }
  for (const InterEdge& e : net.inter_edges()) {
    out += fmt::format("inter\t{}\t{}\t{}\t{}\n", e.a.layer, net.label(e.a), e.b.layer, net.label(e.b));
  }
  for (LayerIndex l = 0; l < net.layer_count(); ++l) {
    const Layer& layer = net.layer(l);
    for (NodeIndex n = 0; n < layer.node_count(); ++n) {
      if (layer.degree(n) == 0 && net.inter_degree({l, n}) == 0) {
        out += fmt::format("node\t{}\t{}\t-\t-\n", l, layer.label(n));
      }
    }
  }
  return out;
}

void save_network(const MultilayerNetwork& net, const std::filesystem::path& path,
                  std::span<const std::string> comments) {
  tsv::write_file(path, format_network(net, comments));
}

}  // namespace mulan

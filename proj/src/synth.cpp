#include "rminer/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <set>

#include "rminer/errors.hpp"

namespace rminer {

namespace {

// Uniform double in [0,1) from the raw engine output; keeps edge draws
// identical across standard library implementations.
double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<std::string> numbered_labels(const std::string& prefix,
                                         std::size_t count) {
  int width = 1;
  for (std::size_t v = count > 0 ? count - 1 : 0; v >= 10; v /= 10) ++width;
  std::vector<std::string> labels;
  labels.reserve(count);
  char buf[64];
  for (std::size_t i = 0; i < count; ++i) {
    std::snprintf(buf, sizeof(buf), "%s%0*zu", prefix.c_str(), width, i);
    labels.emplace_back(buf);
  }
  return labels;
}

}  // namespace

KPartiteGraph random_graph(const RandomGraphSpec& spec, std::uint64_t seed) {
  for (const auto& et : spec.edge_types)
    if (et.density < 0.0 || et.density > 1.0)
      throw std::invalid_argument("random_graph: density must be in [0,1]");

  KPartiteGraph::Builder b;
  std::vector<std::vector<std::string>> labels;
  for (const auto& t : spec.types) {
    labels.push_back(numbered_labels(t.name + "_n", t.size));
    b.add_entity_type(t.name, labels.back());
  }
  for (const auto& et : spec.edge_types) b.add_edge_type(et.name, et.left, et.right);

  std::mt19937_64 rng(seed);
  for (const auto& et : spec.edge_types) {
    std::size_t li = 0, ri = 0;
    for (std::size_t t = 0; t < spec.types.size(); ++t) {
      if (spec.types[t].name == et.left) li = t;
      if (spec.types[t].name == et.right) ri = t;
    }
    for (const auto& l : labels[li])
      for (const auto& r : labels[ri])
        if (next_uniform(rng) < et.density) b.add_edge(et.name, l, r);
  }
  return b.build();
}

std::pair<KPartiteGraph, GroundTruth> embed(const KPartiteGraph& graph,
                                            const EmbedSpec& spec) {
  if (spec.k < 1) throw std::invalid_argument("embed: k must be >= 1");
  int hub = graph.type_index(spec.hub_type);
  if (hub < 0) throw DataError("embed: unknown hub type \"" + spec.hub_type + "\"");
  std::set<std::uint32_t> selected{static_cast<std::uint32_t>(hub)};
  for (const auto& s : spec.satellite_types) {
    int t = graph.type_index(s);
    if (t < 0) throw DataError("embed: unknown satellite type \"" + s + "\"");
    if (graph.edge_type_between(static_cast<std::uint32_t>(t),
                                static_cast<std::uint32_t>(hub)) < 0)
      throw DataError("embed: no declared edge type between \"" + s +
                      "\" and hub \"" + spec.hub_type + "\"");
    selected.insert(static_cast<std::uint32_t>(t));
  }

  // Fresh labels per selected type.
  GroundTruth truth;
  std::vector<std::vector<std::string>> new_labels(graph.type_count());
  for (std::uint32_t t : selected) {
    auto candidates = numbered_labels("embedded_", spec.k);
    for (auto& label : candidates) {
      while (graph.label_index(t, label) >= 0) label += "_";
      new_labels[t].push_back(label);
    }
    truth.labels[graph.type_name(t)] = new_labels[t];
  }

  KPartiteGraph::Builder b;
  for (std::uint32_t t = 0; t < graph.type_count(); ++t) {
    std::vector<std::string> labels = graph.labels(t);
    labels.insert(labels.end(), new_labels[t].begin(), new_labels[t].end());
    b.add_entity_type(graph.type_name(t), labels);
  }
  const auto edge_types = graph.edge_types();
  for (const auto& et : edge_types)
    b.add_edge_type(et.name, graph.type_name(et.left), graph.type_name(et.right));
  for (std::size_t e = 0; e < edge_types.size(); ++e) {
    const auto& et = edge_types[e];
    for (const auto& [li, ri] : graph.edges(e))
      b.add_edge(et.name, graph.labels(et.left)[li], graph.labels(et.right)[ri]);
  }

  std::mt19937_64 rng(spec.seed);
  for (std::size_t e = 0; e < edge_types.size(); ++e) {
    const auto& et = edge_types[e];
    const bool left_sel = selected.contains(et.left);
    const bool right_sel = selected.contains(et.right);
    const auto& left_labels = graph.labels(et.left);
    const auto& right_labels = graph.labels(et.right);

    // Embedded block: the new nodes form a complete subgraph along every
    // declared edge type between selected types.
    if (left_sel && right_sel) {
      for (const auto& l : new_labels[et.left]) {
        for (const auto& r : new_labels[et.right]) {
          b.add_edge(et.name, l, r);
          truth.edges.emplace_back(et.name, l, r);
        }
      }
    }
    // Background links between existing and new nodes: each existing node
    // keeps, in expectation, the fraction of the opposite side it links to.
    if (right_sel && !left_labels.empty()) {
      for (std::uint32_t i = 0; i < left_labels.size(); ++i) {
        double frac = right_labels.empty()
                          ? 0.0
                          : static_cast<double>(graph.degree({et.left, i}, e)) /
                                static_cast<double>(right_labels.size());
        for (const auto& r : new_labels[et.right])
          if (next_uniform(rng) < frac) b.add_edge(et.name, left_labels[i], r);
      }
    }
    if (left_sel && !right_labels.empty()) {
      for (std::uint32_t j = 0; j < right_labels.size(); ++j) {
        double frac = left_labels.empty()
                          ? 0.0
                          : static_cast<double>(graph.degree({et.right, j}, e)) /
                                static_cast<double>(left_labels.size());
        for (const auto& l : new_labels[et.left])
          if (next_uniform(rng) < frac) b.add_edge(et.name, l, right_labels[j]);
      }
    }
  }
  return {b.build(), std::move(truth)};
}

std::optional<std::size_t> rank_of_embedded(
    const KPartiteGraph& graph, std::span<const RankedPattern> ranked,
    const GroundTruth& truth) {
  std::vector<NodeRef> embedded;
  for (const auto& [type_name, labels] : truth.labels) {
    int t = graph.type_index(type_name);
    if (t < 0) return std::nullopt;
    for (const auto& label : labels) {
      int i = graph.label_index(static_cast<std::uint32_t>(t), label);
      if (i < 0) return std::nullopt;
      embedded.push_back({static_cast<std::uint32_t>(t),
                          static_cast<std::uint32_t>(i)});
    }
  }

  std::optional<std::size_t> best;
  for (const RankedPattern& rp : ranked) {
    std::vector<NodeRef> nodes = rp.pattern.sorted_nodes();
    bool contains_all = true;
    for (const NodeRef& n : embedded) {
      if (!std::binary_search(nodes.begin(), nodes.end(), n)) {
        contains_all = false;
        break;
      }
    }
    if (contains_all && (!best || rp.rank < *best)) best = rp.rank;
  }
  return best;
}

}  // namespace rminer

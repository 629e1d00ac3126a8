#include "rminer/score.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rminer/errors.hpp"

namespace rminer {

double self_information(const MaxEntModel& model, const KPartiteGraph& graph,
                        const Pattern& pattern) {
  double bits = 0.0;
  const auto& nodes = pattern.nodes;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      const NodeRef& a = nodes[i];
      const NodeRef& b = nodes[j];
      if (a.type == b.type) continue;
      int e = graph.edge_type_between(a.type, b.type);
      if (e < 0 || !graph.has_edge(a, b)) continue;
      const auto& et = graph.edge_types()[e];
      const NodeRef& l = a.type == et.left ? a : b;
      const NodeRef& r = a.type == et.left ? b : a;
      double p = model.edge_probability(e, l.index, r.index);
      if (p <= 0.0)
        throw DataError("self_information: pattern edge " + graph.label(l) +
                        "-" + graph.label(r) +
                        " has model probability 0 (model/graph mismatch)");
      bits -= std::log2(p);
    }
  }
  return bits;
}

double description_length(std::size_t total_nodes, std::size_t pattern_nodes,
                          double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("description_length: p must be in (0,1)");
  if (pattern_nodes > total_nodes)
    throw std::invalid_argument("description_length: n exceeds N");
  const double n = static_cast<double>(pattern_nodes);
  const double rest = static_cast<double>(total_nodes - pattern_nodes);
  return -n * std::log2(p) - rest * std::log2(1.0 - p);
}

double interestingness(const MaxEntModel& model, const KPartiteGraph& graph,
                       const Pattern& pattern, const RankOptions& options) {
  const double p = options.p ? *options.p : database_density(graph);
  double si = self_information(model, graph, pattern);
  double dl = description_length(graph.node_count(), pattern.nodes.size(), p);
  return si / dl;
}

std::vector<RankedPattern> rank(const MaxEntModel& model,
                                const KPartiteGraph& graph,
                                std::span<const Pattern> patterns,
                                const RankOptions& options) {
  const double p = options.p ? *options.p : database_density(graph);

  struct Entry {
    RankedPattern ranked;
    std::string key;
  };
  std::vector<Entry> entries;
  entries.reserve(patterns.size());
  for (const Pattern& pat : patterns) {
    Entry e;
    e.ranked.pattern = pat;
    e.ranked.self_information_bits = self_information(model, graph, pat);
    e.ranked.description_length_bits =
        description_length(graph.node_count(), pat.nodes.size(), p);
    e.ranked.interestingness =
        e.ranked.self_information_bits / e.ranked.description_length_bits;
    e.key = canonical_key(graph, pat.nodes);
    entries.push_back(std::move(e));
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) {
                     if (a.ranked.interestingness != b.ranked.interestingness)
                       return a.ranked.interestingness > b.ranked.interestingness;
                     return a.key < b.key;
                   });

  std::vector<RankedPattern> out;
  out.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    entries[i].ranked.rank = i + 1;
    out.push_back(std::move(entries[i].ranked));
  }
  if (options.top_k && out.size() > *options.top_k) out.resize(*options.top_k);
  return out;
}

}  // namespace rminer

#ifndef RMINER_SYNTH_HPP_
#define RMINER_SYNTH_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rminer/graph.hpp"
#include "rminer/score.hpp"

namespace rminer {

struct RandomGraphSpec {
  struct TypeSpec {
    std::string name;
    std::size_t size = 0;
  };
  struct EdgeTypeSpec {
    std::string name;
    std::string left;
    std::string right;
    double density = 0.0;  // independent presence probability per cell
  };
  std::vector<TypeSpec> types;
  std::vector<EdgeTypeSpec> edge_types;
};

// Each potential edge is present independently with its edge type's
// density. Deterministic given the seed.
KPartiteGraph random_graph(const RandomGraphSpec& spec, std::uint64_t seed);

struct EmbedSpec {
  std::size_t k = 1;               // fresh nodes per selected type
  std::string hub_type;            // must share an edge type with each satellite
  std::vector<std::string> satellite_types;
  std::uint64_t seed = 0;
};

struct GroundTruth {
  // Per selected entity type name: the embedded node labels.
  std::map<std::string, std::vector<std::string>> labels;
  // (edge type name, left label, right label) of every embedded edge.
  std::vector<std::tuple<std::string, std::string, std::string>> edges;
};

// Adds k fresh nodes per selected type, all cross edges between embedded
// nodes along declared edge types, and Bernoulli background edges between
// each existing node and each new node of a linked type with probability
// deg(existing) / |new node's side before augmentation|. Existing edges
// are never touched. Deterministic given the seed.
std::pair<KPartiteGraph, GroundTruth> embed(const KPartiteGraph& graph,
                                            const EmbedSpec& spec);

// Best rank among patterns whose node set contains every embedded node,
// or nullopt.
std::optional<std::size_t> rank_of_embedded(
    const KPartiteGraph& graph, std::span<const RankedPattern> ranked,
    const GroundTruth& truth);

}  // namespace rminer

#endif  // RMINER_SYNTH_HPP_

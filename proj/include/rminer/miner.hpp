#ifndef RMINER_MINER_HPP_
#define RMINER_MINER_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rminer/graph.hpp"

namespace rminer {

// A connected complete subgraph in representative-permutation order:
// the root is the minimum node and every proper prefix is itself a CCS.
struct Pattern {
  std::vector<NodeRef> nodes;   // insertion order
  std::uint64_t edge_count = 0; // data edges induced among the nodes

  std::vector<NodeRef> sorted_nodes() const;
};

struct MineOptions {
  bool maximal_only = true;       // false: emit every CCS visited
  int min_nodes = 2;
  bool require_all_types = false; // keep only patterns spanning every type
  bool prune = true;              // sibling common-neighbour subsumption
  int threads = 1;

  // Study-only switches reproducing the published pseudocode verbatim;
  // no correctness claim is made for either.
  bool literal_window = false;     // include the reaching step in the window
  bool literal_emit_guard = false; // require a non-empty sibling collection
};

using PatternSink = std::function<void(const Pattern&)>;

// Depth-first enumeration from every root in total node order. Each
// qualifying (M)CCS is delivered exactly once, in deterministic order
// regardless of thread count.
void mine(const KPartiteGraph& graph, const MineOptions& options,
          const PatternSink& sink);

std::vector<Pattern> mine_all(const KPartiteGraph& graph,
                              const MineOptions& options = {});

// True iff the adjacent common neighbours of the set equal the set itself.
// Throws std::invalid_argument for sets of fewer than two nodes.
bool is_maximal(const KPartiteGraph& graph, std::span<const NodeRef> nodes);

// Number of data edges among the nodes along declared edge types.
std::uint64_t induced_edge_count(const KPartiteGraph& graph,
                                 std::span<const NodeRef> nodes);

// Sorted "type:label" list; the deterministic tiebreak and file-order key.
std::string canonical_key(const KPartiteGraph& graph,
                          std::span<const NodeRef> nodes);

namespace detail {

// The admissibility window test on global node ids. reachable_step is the
// 1-based step at which the candidate's type first became reachable;
// the node added at that step is outside the window.
bool window_admissible(std::span<const std::uint32_t> pattern_gids,
                       std::uint32_t reachable_step, std::uint32_t candidate,
                       bool literal_window);

}  // namespace detail

}  // namespace rminer

#endif  // RMINER_MINER_HPP_

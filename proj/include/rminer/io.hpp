#ifndef RMINER_IO_HPP_
#define RMINER_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "rminer/graph.hpp"
#include "rminer/maxent.hpp"
#include "rminer/miner.hpp"
#include "rminer/score.hpp"
#include "rminer/synth.hpp"

namespace rminer::io {

// Pattern stream, one JSON record per line:
//   {"id": 0, "nodes": {"title": ["T1", "T3"], ...}, "edge_count": 6}
void write_patterns(std::ostream& out, const KPartiteGraph& graph,
                    std::span<const Pattern> patterns);
// Throws DataError on malformed records or labels absent from the graph.
std::vector<Pattern> read_patterns(std::istream& in,
                                   const KPartiteGraph& graph);

// Ranked stream, floats printed to 12 significant digits.
void write_ranked(std::ostream& out, const KPartiteGraph& graph,
                  std::span<const RankedPattern> ranked);

// Debug edge dump, one {"type", "left", "right"} record per line.
void write_graph_dump(std::ostream& out, const KPartiteGraph& graph);

// Per relationship type: multipliers, frozen rows/columns, residual.
void write_model_dump(std::ostream& out, const KPartiteGraph& graph,
                      const MaxEntModel& model);

// Writes schema.json plus one CSV per relationship type, in the exact
// format ingest() consumes.
void write_dataset(const std::filesystem::path& dir,
                   const KPartiteGraph& graph);

void write_ground_truth(std::ostream& out, const GroundTruth& truth);

}  // namespace rminer::io

#endif  // RMINER_IO_HPP_

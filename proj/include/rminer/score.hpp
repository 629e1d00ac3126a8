#ifndef RMINER_SCORE_HPP_
#define RMINER_SCORE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rminer/maxent.hpp"
#include "rminer/miner.hpp"

namespace rminer {

struct RankedPattern {
  Pattern pattern;
  double self_information_bits = 0.0;
  double description_length_bits = 0.0;
  double interestingness = 0.0;
  std::size_t rank = 0;  // 1-based
};

struct RankOptions {
  std::optional<double> p;            // defaults to database density
  std::optional<std::size_t> top_k;
};

// -sum over the pattern's edges of log2 of the modelled edge probability.
// Throws DataError if any pattern edge has model probability 0.
double self_information(const MaxEntModel& model, const KPartiteGraph& graph,
                        const Pattern& pattern);

// Node-membership code: -n*log2(p) - (N-n)*log2(1-p). Requires p in (0,1).
double description_length(std::size_t total_nodes, std::size_t pattern_nodes,
                          double p);

double interestingness(const MaxEntModel& model, const KPartiteGraph& graph,
                       const Pattern& pattern, const RankOptions& options = {});

// Scores and sorts by descending interestingness, ties broken by ascending
// canonical key; assigns 1-based ranks, then applies top_k.
std::vector<RankedPattern> rank(const MaxEntModel& model,
                                const KPartiteGraph& graph,
                                std::span<const Pattern> patterns,
                                const RankOptions& options = {});

}  // namespace rminer

#endif  // RMINER_SCORE_HPP_

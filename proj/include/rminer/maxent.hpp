#ifndef RMINER_MAXENT_HPP_
#define RMINER_MAXENT_HPP_

#include <cstdint>
#include <vector>

#include "rminer/graph.hpp"

namespace rminer {

struct FitOptions {
  double tolerance = 1e-8;   // absolute, on expected vs observed degrees
  int max_iterations = 10000;  // full coordinate sweeps
  double initial_multiplier = 0.0;
};

// Independent Bernoulli model of one relationship type: non-frozen cell
// (i, j) has success probability sigmoid(-lambda[i] - mu[j]). Rows and
// columns with degenerate margins (0 or full) are peeled off before
// fitting and their cells frozen at 0 or 1.
class RelationshipModel {
 public:
  // Fits multipliers so every expected degree matches its observed degree
  // within tolerance. Degrees must come from an actual binary matrix.
  // Throws DataError on non-convergence.
  static RelationshipModel fit(const std::vector<std::uint32_t>& row_degrees,
                               const std::vector<std::uint32_t>& col_degrees,
                               const FitOptions& options = {});

  double probability(std::size_t i, std::size_t j) const;

  std::size_t rows() const { return lambda_.size(); }
  std::size_t cols() const { return mu_.size(); }
  bool row_frozen(std::size_t i) const { return row_peel_seq_[i] >= 0; }
  bool col_frozen(std::size_t j) const { return col_peel_seq_[j] >= 0; }
  double lambda(std::size_t i) const { return lambda_[i]; }
  double mu(std::size_t j) const { return mu_[j]; }
  double achieved_residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  std::vector<double> lambda_, mu_;  // valid only for non-frozen rows/cols
  std::vector<int> row_peel_seq_, col_peel_seq_;  // -1 if active
  std::vector<std::uint8_t> row_peel_value_, col_peel_value_;
  double residual_ = 0.0;
  int iterations_ = 0;
};

// One RelationshipModel per edge type, fitted independently; the joint
// background distribution is their product.
class MaxEntModel {
 public:
  static MaxEntModel fit(const KPartiteGraph& graph,
                         const FitOptions& options = {}, int threads = 1);

  const RelationshipModel& relationship(std::size_t edge_type) const {
    return models_.at(edge_type);
  }
  std::size_t relationship_count() const { return models_.size(); }

  // P(edge present) for (left index, right index) of one edge type.
  double edge_probability(std::size_t edge_type, std::size_t left,
                          std::size_t right) const {
    return models_.at(edge_type).probability(left, right);
  }

 private:
  std::vector<RelationshipModel> models_;
};

// Total edge count over the summed |left| * |right| capacity of the
// declared edge types; the default value of the scoring parameter p.
double database_density(const KPartiteGraph& graph);

}  // namespace rminer

#endif  // RMINER_MAXENT_HPP_

#include "rminer/maxent.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "rminer/errors.hpp"

namespace rminer {

namespace {

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

struct Group {
  double multiplier = 0.0;
  double count = 0.0;   // nodes sharing this degree
  double degree = 0.0;  // target margin per node
};

// Solves sum_g other[g].count * sigmoid(-x - other[g].multiplier) = degree
// for x. The left side is strictly decreasing; safeguarded Newton inside a
// sign-change bracket.
double solve_margin(const std::vector<Group>& other, double degree,
                    double x0) {
  auto eval = [&](double x, double* deriv) {
    double f = -degree;
    double d = 0.0;
    for (const Group& g : other) {
      double s = sigmoid(-x - g.multiplier);
      f += g.count * s;
      d -= g.count * s * (1.0 - s);
    }
    if (deriv) *deriv = d;
    return f;
  };

  double lo = x0 - 1.0, hi = x0 + 1.0;
  double step = 1.0;
  while (eval(lo, nullptr) < 0) lo -= (step *= 2.0);
  step = 1.0;
  while (eval(hi, nullptr) > 0) hi += (step *= 2.0);

  double x = std::clamp(x0, lo, hi);
  for (int it = 0; it < 100; ++it) {
    double d;
    double f = eval(x, &d);
    if (f > 0)
      lo = x;
    else
      hi = x;
    if (std::abs(f) < 1e-15) break;
    double nx = d != 0.0 ? x - f / d : x;
    if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
    if (std::abs(nx - x) < 1e-16 * (1.0 + std::abs(x))) {
      x = nx;
      break;
    }
    x = nx;
  }
  return x;
}

}  // namespace

RelationshipModel RelationshipModel::fit(
    const std::vector<std::uint32_t>& row_degrees,
    const std::vector<std::uint32_t>& col_degrees, const FitOptions& options) {
  if (options.tolerance <= 0)
    throw std::invalid_argument("fit: tolerance must be positive");

  RelationshipModel m;
  const std::size_t R = row_degrees.size(), C = col_degrees.size();
  m.lambda_.assign(R, std::numeric_limits<double>::quiet_NaN());
  m.mu_.assign(C, std::numeric_limits<double>::quiet_NaN());
  m.row_peel_seq_.assign(R, -1);
  m.col_peel_seq_.assign(C, -1);
  m.row_peel_value_.assign(R, 0);
  m.col_peel_value_.assign(C, 0);

  // Peel degenerate margins until none remain; freezing a full row at 1
  // lowers every remaining column degree, so peeling can cascade.
  std::vector<std::int64_t> rd(row_degrees.begin(), row_degrees.end());
  std::vector<std::int64_t> cd(col_degrees.begin(), col_degrees.end());
  std::size_t active_rows = R, active_cols = C;
  int seq = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < R; ++i) {
      if (m.row_peel_seq_[i] >= 0) continue;
      if (rd[i] == 0) {
        m.row_peel_seq_[i] = seq++;
        m.row_peel_value_[i] = 0;
        --active_rows;
        changed = true;
      } else if (rd[i] == static_cast<std::int64_t>(active_cols)) {
        m.row_peel_seq_[i] = seq++;
        m.row_peel_value_[i] = 1;
        --active_rows;
        for (std::size_t j = 0; j < C; ++j)
          if (m.col_peel_seq_[j] < 0) --cd[j];
        changed = true;
      }
    }
    for (std::size_t j = 0; j < C; ++j) {
      if (m.col_peel_seq_[j] >= 0) continue;
      if (cd[j] == 0) {
        m.col_peel_seq_[j] = seq++;
        m.col_peel_value_[j] = 0;
        --active_cols;
        changed = true;
      } else if (cd[j] == static_cast<std::int64_t>(active_rows)) {
        m.col_peel_seq_[j] = seq++;
        m.col_peel_value_[j] = 1;
        --active_cols;
        for (std::size_t i = 0; i < R; ++i)
          if (m.row_peel_seq_[i] < 0) --rd[i];
        changed = true;
      }
    }
  }

  if (active_rows == 0 || active_cols == 0) {
    m.residual_ = 0.0;
    return m;
  }

  // Nodes with equal residual degree share one multiplier.
  std::map<std::int64_t, Group> row_groups_map, col_groups_map;
  for (std::size_t i = 0; i < R; ++i) {
    if (m.row_peel_seq_[i] >= 0) continue;
    auto& g = row_groups_map[rd[i]];
    g.count += 1.0;
    g.degree = static_cast<double>(rd[i]);
    g.multiplier = options.initial_multiplier;
  }
  for (std::size_t j = 0; j < C; ++j) {
    if (m.col_peel_seq_[j] >= 0) continue;
    auto& g = col_groups_map[cd[j]];
    g.count += 1.0;
    g.degree = static_cast<double>(cd[j]);
    g.multiplier = options.initial_multiplier;
  }
  std::vector<Group> row_groups, col_groups;
  for (auto& [deg, g] : row_groups_map) row_groups.push_back(g);
  for (auto& [deg, g] : col_groups_map) col_groups.push_back(g);

  auto max_residual = [&] {
    double worst = 0.0;
    for (const Group& rg : row_groups) {
      double expected = 0.0;
      for (const Group& cg : col_groups)
        expected += cg.count * sigmoid(-rg.multiplier - cg.multiplier);
      worst = std::max(worst, std::abs(expected - rg.degree));
    }
    for (const Group& cg : col_groups) {
      double expected = 0.0;
      for (const Group& rg : row_groups)
        expected += rg.count * sigmoid(-rg.multiplier - cg.multiplier);
      worst = std::max(worst, std::abs(expected - cg.degree));
    }
    return worst;
  };

  double residual = max_residual();
  int sweep = 0;
  while (residual > options.tolerance) {
    if (sweep >= options.max_iterations) {
      std::ostringstream msg;
      msg << "fit: no convergence in " << options.max_iterations
          << " sweeps; worst margin residual " << residual;
      throw DataError(msg.str());
    }
    for (Group& rg : row_groups)
      rg.multiplier = solve_margin(col_groups, rg.degree, rg.multiplier);
    for (Group& cg : col_groups)
      cg.multiplier = solve_margin(row_groups, cg.degree, cg.multiplier);
    residual = max_residual();
    ++sweep;
  }
  m.residual_ = residual;
  m.iterations_ = sweep;

  // Replicate each group's solved multiplier to its member nodes.
  {
    std::size_t idx = 0;
    for (auto& [deg, g] : row_groups_map) g.multiplier = row_groups[idx++].multiplier;
    idx = 0;
    for (auto& [deg, g] : col_groups_map) g.multiplier = col_groups[idx++].multiplier;
  }
  for (std::size_t i = 0; i < R; ++i)
    if (m.row_peel_seq_[i] < 0)
      m.lambda_[i] = row_groups_map.at(rd[i]).multiplier;
  for (std::size_t j = 0; j < C; ++j)
    if (m.col_peel_seq_[j] < 0) m.mu_[j] = col_groups_map.at(cd[j]).multiplier;
  return m;
}

double RelationshipModel::probability(std::size_t i, std::size_t j) const {
  const bool rf = row_peel_seq_[i] >= 0, cf = col_peel_seq_[j] >= 0;
  if (rf && cf) {
    // The earlier peel fixed the cell.
    return row_peel_seq_[i] < col_peel_seq_[j]
               ? static_cast<double>(row_peel_value_[i])
               : static_cast<double>(col_peel_value_[j]);
  }
  if (rf) return static_cast<double>(row_peel_value_[i]);
  if (cf) return static_cast<double>(col_peel_value_[j]);
  return sigmoid(-lambda_[i] - mu_[j]);
}

MaxEntModel MaxEntModel::fit(const KPartiteGraph& graph,
                             const FitOptions& options, int threads) {
  const auto edge_types = graph.edge_types();
  MaxEntModel model;
  model.models_.resize(edge_types.size());

  auto fit_one = [&](std::size_t e) {
    const auto& et = edge_types[e];
    std::vector<std::uint32_t> row_deg(graph.labels(et.left).size(), 0);
    std::vector<std::uint32_t> col_deg(graph.labels(et.right).size(), 0);
    for (std::size_t i = 0; i < row_deg.size(); ++i)
      row_deg[i] = graph.degree({et.left, static_cast<std::uint32_t>(i)}, e);
    for (std::size_t j = 0; j < col_deg.size(); ++j)
      col_deg[j] = graph.degree({et.right, static_cast<std::uint32_t>(j)}, e);
    model.models_[e] = RelationshipModel::fit(row_deg, col_deg, options);
  };

  if (threads <= 1 || edge_types.size() <= 1) {
    for (std::size_t e = 0; e < edge_types.size(); ++e) fit_one(e);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
      while (true) {
        std::size_t e = next.fetch_add(1);
        if (e >= edge_types.size()) break;
        try {
          fit_one(e);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    };
    int n = std::min<int>(threads, static_cast<int>(edge_types.size()));
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }
  return model;
}

double database_density(const KPartiteGraph& graph) { return graph.density(); }

}  // namespace rminer

#include "rminer/miner.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <stdexcept>
#include <thread>

namespace rminer {

std::vector<NodeRef> Pattern::sorted_nodes() const {
  std::vector<NodeRef> out = nodes;
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t induced_edge_count(const KPartiteGraph& graph,
                                 std::span<const NodeRef> nodes) {
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (nodes[i].type != nodes[j].type &&
          graph.edge_type_between(nodes[i].type, nodes[j].type) != -1 &&
          graph.has_edge(nodes[i], nodes[j]))
        ++count;
  return count;
}

std::string canonical_key(const KPartiteGraph& graph,
                          std::span<const NodeRef> nodes) {
  std::vector<NodeRef> sorted(nodes.begin(), nodes.end());
  std::sort(sorted.begin(), sorted.end());
  std::string key;
  for (const NodeRef& n : sorted) {
    if (!key.empty()) key += '|';
    key += graph.type_name(n.type);
    key += ':';
    key += graph.label(n);
  }
  return key;
}

bool is_maximal(const KPartiteGraph& graph, std::span<const NodeRef> nodes) {
  if (nodes.size() < 2)
    throw std::invalid_argument(
        "is_maximal: undefined for sets of fewer than two nodes");
  Bitset acn = graph.adjacent_common_neighbour_bits(nodes);
  Bitset set(graph.node_count());
  for (const NodeRef& n : nodes) set.set(graph.global_id(n));
  return acn == set;
}

namespace detail {

bool window_admissible(std::span<const std::uint32_t> pattern_gids,
                       std::uint32_t reachable_step, std::uint32_t candidate,
                       bool literal_window) {
  assert(reachable_step >= 1);
  const std::size_t n = pattern_gids.size();
  if (literal_window) {
    // Compare against every node from the step the type became reachable.
    for (std::size_t i = reachable_step - 1; i < n; ++i)
      if (pattern_gids[i] >= candidate) return false;
    return true;
  }
  if (candidate <= pattern_gids[0]) return false;  // root minimality
  // Only nodes added strictly after the reaching step are in the window.
  for (std::size_t i = reachable_step; i < n; ++i)
    if (pattern_gids[i] >= candidate) return false;
  return true;
}

}  // namespace detail

namespace {

struct SearchState {
  std::vector<std::uint32_t> pattern;  // global ids, insertion order
  Bitset pattern_bits;
  Bitset common;     // common neighbours of the pattern
  Bitset adj_union;  // union of member adjacencies
  std::vector<std::uint32_t> reachable_since;  // per type, 1-based step; 0 = not
};

class Search {
 public:
  Search(const KPartiteGraph& g, const MineOptions& opt,
         std::function<void(Pattern&&)> emit)
      : g_(g), opt_(opt), emit_(std::move(emit)) {
    const std::size_t K = g.type_count();
    linked_types_.resize(K);
    for (std::uint32_t a = 0; a < K; ++a)
      for (std::uint32_t b = 0; b < K; ++b)
        if (a != b && g.edge_type_between(a, b) != -1)
          linked_types_[a].push_back(b);
  }

  void run_root(std::uint32_t root) {
    const std::size_t N = g_.node_count();
    SearchState st;
    st.pattern.push_back(root);
    st.pattern_bits = Bitset(N);
    st.pattern_bits.set(root);
    const std::uint32_t root_type = g_.node_at(root).type;
    st.common = Bitset(N);
    st.common.set_all();
    st.common.and_with_or(g_.adjacency(root), g_.vacuous_mask(root_type));
    st.adj_union = g_.adjacency(root);
    st.reachable_since.assign(g_.type_count(), 0);
    for (std::uint32_t t : linked_types_[root_type]) st.reachable_since[t] = 1;
    expand(st);
  }

 private:
  void expand(const SearchState& st) {
    if (!opt_.maximal_only &&
        st.pattern.size() >= static_cast<std::size_t>(opt_.min_nodes))
      emit_pattern(st);

    Bitset candidates = st.common;
    candidates &= st.adj_union;

    bool recursed = false;
    std::vector<Bitset> sibling_neighbourhoods;  // accepted extensions only
    const bool subsume = opt_.prune && opt_.maximal_only;

    for (std::size_t gid = candidates.next_set_bit(0); gid != Bitset::npos;
         gid = candidates.next_set_bit(gid + 1)) {
      if (st.pattern_bits.test(gid)) continue;
      const NodeRef cand = g_.node_at(static_cast<std::uint32_t>(gid));
      const std::uint32_t step = st.reachable_since[cand.type];
      if (!detail::window_admissible(st.pattern, step,
                                     static_cast<std::uint32_t>(gid),
                                     opt_.literal_window))
        continue;

      Bitset extended_common = st.common;
      extended_common.and_with_or(g_.adjacency(static_cast<std::uint32_t>(gid)),
                                  g_.vacuous_mask(cand.type));
      if (subsume) {
        bool subsumed = false;
        for (const Bitset& prior : sibling_neighbourhoods) {
          if (extended_common.is_subset_of(prior)) {
            subsumed = true;
            break;
          }
        }
        if (subsumed) continue;
        sibling_neighbourhoods.push_back(extended_common);
      }

      SearchState child;
      child.pattern = st.pattern;
      child.pattern.push_back(static_cast<std::uint32_t>(gid));
      child.pattern_bits = st.pattern_bits;
      child.pattern_bits.set(gid);
      child.common = std::move(extended_common);
      child.adj_union = st.adj_union;
      child.adj_union |= g_.adjacency(static_cast<std::uint32_t>(gid));
      child.reachable_since = st.reachable_since;
      const auto step_now =
          static_cast<std::uint32_t>(child.pattern.size());
      for (std::uint32_t t : linked_types_[cand.type])
        if (child.reachable_since[t] == 0) child.reachable_since[t] = step_now;
      expand(child);
      recursed = true;
    }

    if (opt_.maximal_only) {
      const bool endpoint =
          opt_.literal_emit_guard ? !sibling_neighbourhoods.empty() : !recursed;
      if (endpoint &&
          st.pattern.size() >= static_cast<std::size_t>(opt_.min_nodes) &&
          maximal(st))
        emit_pattern(st);
    }
  }

  bool maximal(const SearchState& st) const {
    if (st.pattern.size() == 1)
      return g_.adjacency(st.pattern[0]).none();  // isolated nodes only
    Bitset acn = st.common;
    acn &= st.adj_union;
    return acn == st.pattern_bits;
  }

  void emit_pattern(const SearchState& st) {
    Pattern p;
    p.nodes.reserve(st.pattern.size());
    for (std::uint32_t gid : st.pattern) p.nodes.push_back(g_.node_at(gid));
    if (opt_.require_all_types) {
      std::vector<bool> present(g_.type_count(), false);
      for (const NodeRef& n : p.nodes) present[n.type] = true;
      if (std::find(present.begin(), present.end(), false) != present.end())
        return;
    }
    p.edge_count = induced_edge_count(g_, p.nodes);
    emit_(std::move(p));
  }

  const KPartiteGraph& g_;
  const MineOptions& opt_;
  std::function<void(Pattern&&)> emit_;
  std::vector<std::vector<std::uint32_t>> linked_types_;
};

}  // namespace

void mine(const KPartiteGraph& graph, const MineOptions& options,
          const PatternSink& sink) {
  const std::size_t N = graph.node_count();
  if (options.threads <= 1) {
    Search search(graph, options, [&](Pattern&& p) { sink(p); });
    for (std::uint32_t root = 0; root < N; ++root) search.run_root(root);
    return;
  }

  // Root subtrees are independent; merge per-root results in root order so
  // the output matches the sequential run exactly.
  std::vector<std::vector<Pattern>> per_root(N);
  std::atomic<std::uint32_t> next{0};
  auto worker = [&] {
    while (true) {
      std::uint32_t root = next.fetch_add(1);
      if (root >= N) break;
      Search local(graph, options,
                   [&](Pattern&& p) { per_root[root].push_back(std::move(p)); });
      local.run_root(root);
    }
  };
  std::vector<std::thread> pool;
  const int n_threads = std::max(1, std::min<int>(options.threads, static_cast<int>(N)));
  pool.reserve(n_threads);
  for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (const auto& patterns : per_root)
    for (const Pattern& p : patterns) sink(p);
}

std::vector<Pattern> mine_all(const KPartiteGraph& graph,
                              const MineOptions& options) {
  std::vector<Pattern> out;
  mine(graph, options, [&](const Pattern& p) { out.push_back(p); });
  return out;
}

}  // namespace rminer

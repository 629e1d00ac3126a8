#include "rminer/graph.hpp"

#include <algorithm>
#include <unordered_map>

#include "rminer/errors.hpp"

namespace rminer {

void KPartiteGraph::Builder::add_entity_type(std::string name,
                                             std::vector<std::string> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  type_names_.push_back(std::move(name));
  labels_.push_back(std::move(labels));
}

void KPartiteGraph::Builder::add_edge_type(std::string name,
                                           const std::string& left_type,
                                           const std::string& right_type) {
  auto find = [&](const std::string& t) {
    auto it = std::find(type_names_.begin(), type_names_.end(), t);
    if (it == type_names_.end())
      throw SchemaError("graph: unknown entity type \"" + t + "\"");
    return static_cast<std::uint32_t>(it - type_names_.begin());
  };
  std::uint32_t l = find(left_type), r = find(right_type);
  if (l == r)
    throw SchemaError("graph: edge type \"" + name +
                      "\" must join distinct entity types");
  edge_types_.push_back({std::move(name), l, r});
  edges_.emplace_back();
}

void KPartiteGraph::Builder::add_edge(const std::string& edge_type_name,
                                      const std::string& left_label,
                                      const std::string& right_label) {
  for (std::size_t e = 0; e < edge_types_.size(); ++e) {
    if (edge_types_[e].name == edge_type_name) {
      edges_[e].emplace_back(left_label, right_label);
      return;
    }
  }
  throw SchemaError("graph: unknown edge type \"" + edge_type_name + "\"");
}

KPartiteGraph KPartiteGraph::Builder::build() {
  KPartiteGraph g;
  g.type_names_ = type_names_;
  g.labels_ = labels_;
  g.edge_types_ = edge_types_;

  const std::size_t K = g.type_names_.size();
  g.type_offset_.resize(K);
  std::uint32_t offset = 0;
  for (std::size_t t = 0; t < K; ++t) {
    g.type_offset_[t] = offset;
    offset += static_cast<std::uint32_t>(g.labels_[t].size());
  }
  const std::size_t N = offset;
  g.type_of_.resize(N);
  for (std::size_t t = 0; t < K; ++t)
    for (std::size_t i = 0; i < g.labels_[t].size(); ++i)
      g.type_of_[g.type_offset_[t] + i] = static_cast<std::uint32_t>(t);

  g.edge_type_lookup_.assign(K * K, -1);
  for (std::size_t e = 0; e < g.edge_types_.size(); ++e) {
    const auto& et = g.edge_types_[e];
    int& a = g.edge_type_lookup_[et.left * K + et.right];
    int& b = g.edge_type_lookup_[et.right * K + et.left];
    if (a != -1)
      throw SchemaError("graph: duplicate edge type between \"" +
                        g.type_names_[et.left] + "\" and \"" +
                        g.type_names_[et.right] + "\"");
    a = b = static_cast<int>(e);
  }

  // Label -> canonical index, per type.
  std::vector<std::unordered_map<std::string, std::uint32_t>> index(K);
  for (std::size_t t = 0; t < K; ++t)
    for (std::size_t i = 0; i < g.labels_[t].size(); ++i)
      index[t][g.labels_[t][i]] = static_cast<std::uint32_t>(i);

  g.adjacency_.assign(N, Bitset(N));
  g.edges_.resize(g.edge_types_.size());
  g.left_degree_.resize(g.edge_types_.size());
  g.right_degree_.resize(g.edge_types_.size());
  for (std::size_t e = 0; e < g.edge_types_.size(); ++e) {
    const auto& et = g.edge_types_[e];
    g.left_degree_[e].assign(g.labels_[et.left].size(), 0);
    g.right_degree_[e].assign(g.labels_[et.right].size(), 0);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> local;
    local.reserve(edges_[e].size());
    for (const auto& [ll, rl] : edges_[e]) {
      auto li = index[et.left].find(ll);
      auto ri = index[et.right].find(rl);
      if (li == index[et.left].end())
        throw DataError("graph: edge references unknown \"" +
                        g.type_names_[et.left] + "\" label \"" + ll + "\"");
      if (ri == index[et.right].end())
        throw DataError("graph: edge references unknown \"" +
                        g.type_names_[et.right] + "\" label \"" + rl + "\"");
      local.emplace_back(li->second, ri->second);
    }
    std::sort(local.begin(), local.end());
    local.erase(std::unique(local.begin(), local.end()), local.end());
    for (const auto& [li, ri] : local) {
      std::uint32_t lg = g.type_offset_[et.left] + li;
      std::uint32_t rg = g.type_offset_[et.right] + ri;
      g.adjacency_[lg].set(rg);
      g.adjacency_[rg].set(lg);
      g.left_degree_[e][li] += 1;
      g.right_degree_[e][ri] += 1;
    }
    g.edges_[e] = std::move(local);
  }

  g.vacuous_.assign(K, Bitset(N));
  for (std::size_t t = 0; t < K; ++t) {
    for (std::size_t u = 0; u < K; ++u) {
      if (g.edge_type_lookup_[t * K + u] != -1) continue;
      for (std::size_t i = 0; i < g.labels_[u].size(); ++i)
        g.vacuous_[t].set(g.type_offset_[u] + i);
    }
  }
  return g;
}

KPartiteGraph KPartiteGraph::from_mrd(const MultiRelationalDatabase& mrd) {
  Builder b;
  for (std::size_t t = 0; t < mrd.schema.entity_types.size(); ++t)
    b.add_entity_type(mrd.schema.entity_types[t], mrd.domains[t]);
  for (const auto& rt : mrd.schema.relationship_types)
    b.add_edge_type(rt.name, rt.left, rt.right);
  for (std::size_t r = 0; r < mrd.schema.relationship_types.size(); ++r)
    for (const auto& [l, rl] : mrd.instances[r])
      b.add_edge(mrd.schema.relationship_types[r].name, l, rl);
  return b.build();
}

std::size_t KPartiteGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& e : edges_) n += e.size();
  return n;
}

int KPartiteGraph::type_index(const std::string& name) const {
  for (std::size_t t = 0; t < type_names_.size(); ++t)
    if (type_names_[t] == name) return static_cast<int>(t);
  return -1;
}

int KPartiteGraph::label_index(std::uint32_t t, const std::string& label) const {
  const auto& v = labels_[t];
  auto it = std::lower_bound(v.begin(), v.end(), label);
  if (it == v.end() || *it != label) return -1;
  return static_cast<int>(it - v.begin());
}

int KPartiteGraph::edge_type_between(std::uint32_t ta, std::uint32_t tb) const {
  return edge_type_lookup_[ta * type_count() + tb];
}

std::uint32_t KPartiteGraph::degree(NodeRef n, std::size_t edge_type) const {
  const auto& et = edge_types_[edge_type];
  if (n.type == et.left) return left_degree_[edge_type][n.index];
  if (n.type == et.right) return right_degree_[edge_type][n.index];
  return 0;
}

Bitset KPartiteGraph::common_neighbour_bits(
    std::span<const NodeRef> nodes) const {
  Bitset bits(node_count());
  bits.set_all();
  for (const NodeRef& n : nodes)
    bits.and_with_or(adjacency_[global_id(n)], vacuous_[n.type]);
  return bits;
}

Bitset KPartiteGraph::adjacent_common_neighbour_bits(
    std::span<const NodeRef> nodes) const {
  Bitset bits = common_neighbour_bits(nodes);
  Bitset adj(node_count());
  for (const NodeRef& n : nodes) adj |= adjacency_[global_id(n)];
  bits &= adj;
  return bits;
}

std::vector<NodeRef> KPartiteGraph::nodes_of(const Bitset& bits) const {
  std::vector<NodeRef> out;
  bits.for_each([&](std::size_t gid) {
    out.push_back(node_at(static_cast<std::uint32_t>(gid)));
  });
  return out;
}

std::vector<NodeRef> KPartiteGraph::common_neighbours(
    std::span<const NodeRef> nodes) const {
  return nodes_of(common_neighbour_bits(nodes));
}

std::vector<NodeRef> KPartiteGraph::adjacent_common_neighbours(
    std::span<const NodeRef> nodes) const {
  return nodes_of(adjacent_common_neighbour_bits(nodes));
}

double KPartiteGraph::density() const {
  double capacity = 0;
  for (const auto& et : edge_types_)
    capacity += static_cast<double>(labels_[et.left].size()) *
                static_cast<double>(labels_[et.right].size());
  if (capacity == 0)
    throw DataError("density: every declared edge type has an empty side");
  return static_cast<double>(edge_count()) / capacity;
}

}  // namespace rminer

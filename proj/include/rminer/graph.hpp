#ifndef RMINER_GRAPH_HPP_
#define RMINER_GRAPH_HPP_

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rminer/bitset.hpp"
#include "rminer/schema.hpp"

namespace rminer {

// A node is identified by its entity type ordinal and its ordinal within
// the type's canonical (lexicographic) label order. The total node order
// is lexicographic on (type, index).
struct NodeRef {
  std::uint32_t type = 0;
  std::uint32_t index = 0;

  auto operator<=>(const NodeRef&) const = default;
};

// Immutable K-partite graph: one partition per entity type, edges only
// along declared edge types, never between nodes of the same type.
// All query methods are const and safe to call concurrently.
class KPartiteGraph {
 public:
  struct EdgeType {
    std::string name;
    std::uint32_t left;   // entity type ordinal
    std::uint32_t right;  // entity type ordinal
  };

  class Builder {
   public:
    // Labels are deduplicated and sorted into canonical byte order.
    void add_entity_type(std::string name, std::vector<std::string> labels);
    void add_edge_type(std::string name, const std::string& left_type,
                       const std::string& right_type);
    // Both labels must exist in their partitions; duplicates collapse.
    void add_edge(const std::string& edge_type_name,
                  const std::string& left_label, const std::string& right_label);
    KPartiteGraph build();

   private:
    std::vector<std::string> type_names_;
    std::vector<std::vector<std::string>> labels_;
    std::vector<EdgeType> edge_types_;
    std::vector<std::vector<std::pair<std::string, std::string>>> edges_;
  };

  static KPartiteGraph from_mrd(const MultiRelationalDatabase& mrd);

  std::size_t type_count() const { return type_names_.size(); }
  std::size_t node_count() const { return type_of_.size(); }
  std::size_t edge_count() const;

  const std::string& type_name(std::uint32_t t) const { return type_names_[t]; }
  int type_index(const std::string& name) const;
  const std::vector<std::string>& labels(std::uint32_t t) const {
    return labels_[t];
  }
  const std::string& label(NodeRef n) const { return labels_[n.type][n.index]; }
  // Index of a label within a type's canonical order, or -1.
  int label_index(std::uint32_t t, const std::string& label) const;

  std::span<const EdgeType> edge_types() const { return edge_types_; }
  int edge_type_between(std::uint32_t ta, std::uint32_t tb) const;
  // Local (left index, right index) pairs, in canonical order.
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges(
      std::size_t edge_type) const {
    return edges_[edge_type];
  }

  std::uint32_t global_id(NodeRef n) const {
    return type_offset_[n.type] + n.index;
  }
  NodeRef node_at(std::uint32_t gid) const {
    std::uint32_t t = type_of_[gid];
    return {t, gid - type_offset_[t]};
  }
  std::uint32_t type_offset(std::uint32_t t) const { return type_offset_[t]; }

  bool has_edge(NodeRef a, NodeRef b) const {
    return adjacency_[global_id(a)].test(global_id(b));
  }
  // Degree of a node within one incident edge type.
  std::uint32_t degree(NodeRef n, std::size_t edge_type) const;
  // Total degree across all incident edge types.
  std::uint32_t degree(NodeRef n) const {
    return static_cast<std::uint32_t>(adjacency_[global_id(n)].count());
  }

  // Neighbour bits of one node, over global ids.
  const Bitset& adjacency(std::uint32_t gid) const { return adjacency_[gid]; }
  // Bits of every node whose type has no declared edge type with t
  // (including t itself); such nodes are vacuously common neighbours of
  // any node of type t.
  const Bitset& vacuous_mask(std::uint32_t t) const { return vacuous_[t]; }

  // Every node that, for each input node of a linked type, has the
  // required edge. Input nodes themselves may qualify. The empty set
  // yields all nodes.
  Bitset common_neighbour_bits(std::span<const NodeRef> nodes) const;
  std::vector<NodeRef> common_neighbours(std::span<const NodeRef> nodes) const;

  // Common neighbours with at least one edge into the input set.
  Bitset adjacent_common_neighbour_bits(std::span<const NodeRef> nodes) const;
  std::vector<NodeRef> adjacent_common_neighbours(
      std::span<const NodeRef> nodes) const;

  std::vector<NodeRef> nodes_of(const Bitset& bits) const;

  // Edge count divided by the summed capacity of all declared edge types.
  // Throws DataError if every edge type has an empty side.
  double density() const;

 private:
  friend class Builder;

  std::vector<std::string> type_names_;
  std::vector<std::vector<std::string>> labels_;
  std::vector<EdgeType> edge_types_;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> edges_;
  std::vector<std::uint32_t> type_offset_;
  std::vector<std::uint32_t> type_of_;
  std::vector<Bitset> adjacency_;
  std::vector<Bitset> vacuous_;
  // edge_type_lookup_[ta * K + tb] = edge type index or -1.
  std::vector<int> edge_type_lookup_;
  // Per edge type: degree of each left / right node.
  std::vector<std::vector<std::uint32_t>> left_degree_;
  std::vector<std::vector<std::uint32_t>> right_degree_;
};

}  // namespace rminer

#endif  // RMINER_GRAPH_HPP_

#ifndef RMINER_TESTS_FIXTURES_HPP_
#define RMINER_TESTS_FIXTURES_HPP_

#include <map>
#include <string>

#include "rminer/graph.hpp"
#include "rminer/schema.hpp"

namespace rminer::tests {

// Movie toy database: titles T1..T3, genres Comedy/Drama/History, years
// 2009/2010, 8 relationship instances across of_genre and film_year.
inline const char* kFixtureMSchema = R"({
  "entity_types": [
    {"name": "title"},
    {"name": "genre"},
    {"name": "year"}
  ],
  "relationship_types": [
    {"name": "of_genre", "left": "title", "right": "genre",
     "file": "of_genre.csv", "left_column": "title", "right_column": "genre"},
    {"name": "film_year", "left": "title", "right": "year",
     "file": "film_year.csv", "left_column": "title", "right_column": "year"}
  ]
})";

inline std::map<std::string, std::string> fixture_m_tables() {
  return {
      {"of_genre.csv",
       "title,genre\n"
       "T1,Drama\n"
       "T1,History\n"
       "T3,Drama\n"
       "T3,History\n"
       "T2,Comedy\n"},
      {"film_year.csv",
       "title,year\n"
       "T1,2010\n"
       "T3,2010\n"
       "T2,2009\n"},
  };
}

inline MultiRelationalDatabase fixture_m_mrd() {
  return ingest(parse_schema(kFixtureMSchema), fixture_m_tables());
}

inline KPartiteGraph fixture_m_graph() {
  return KPartiteGraph::from_mrd(fixture_m_mrd());
}

// Market-basket bipartite graph: transactions T1..T4, items I1..I3,
// edges T1-I1, T1-I2, T2-I1, T2-I2, T3-I3, T4-I1.
inline KPartiteGraph fixture_b_graph() {
  KPartiteGraph::Builder b;
  b.add_entity_type("transaction", {"T1", "T2", "T3", "T4"});
  b.add_entity_type("item", {"I1", "I2", "I3"});
  b.add_edge_type("bought", "transaction", "item");
  b.add_edge("bought", "T1", "I1");
  b.add_edge("bought", "T1", "I2");
  b.add_edge("bought", "T2", "I1");
  b.add_edge("bought", "T2", "I2");
  b.add_edge("bought", "T3", "I3");
  b.add_edge("bought", "T4", "I1");
  return b.build();
}

// Looks up a node by entity type and label; aborts the test on a miss.
inline NodeRef node(const KPartiteGraph& g, const std::string& type,
                    const std::string& label) {
  int t = g.type_index(type);
  int i = t >= 0 ? g.label_index(static_cast<std::uint32_t>(t), label) : -1;
  if (t < 0 || i < 0) throw std::runtime_error("fixture node not found: " + label);
  return {static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(i)};
}

}  // namespace rminer::tests

#endif  // RMINER_TESTS_FIXTURES_HPP_

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rminer/miner.hpp"
#include "rminer/synth.hpp"

using namespace rminer;
using namespace rminer::tests;

namespace {

std::set<NodeSet> emitted_sets(const KPartiteGraph& g,
                               const MineOptions& opts) {
  std::set<NodeSet> out;
  for (const Pattern& p : mine_all(g, opts)) {
    NodeSet s = p.sorted_nodes();
    REQUIRE_MESSAGE(!out.contains(s), "duplicate node set emitted");
    out.insert(std::move(s));
  }
  return out;
}

std::set<std::string> labels_of(const KPartiteGraph& g, const NodeSet& s) {
  std::set<std::string> out;
  for (const NodeRef& n : s) out.insert(g.label(n));
  return out;
}

// Small randomized corpus shared by several properties.
KPartiteGraph corpus_graph(std::uint64_t seed) {
  RandomGraphSpec spec;
  int K = 2 + static_cast<int>(seed % 3);
  for (int t = 0; t < K; ++t)
    spec.types.push_back({"t" + std::to_string(t), 3 + (seed + t) % 4});
  // Alternate star and chain topologies.
  for (int t = 1; t < K; ++t) {
    std::string left = seed % 2 == 0 ? "t0" : "t" + std::to_string(t - 1);
    spec.edge_types.push_back({"e" + std::to_string(t), left,
                               "t" + std::to_string(t),
                               0.15 + 0.2 * static_cast<double>(seed % 4)});
  }
  return random_graph(spec, seed * 31 + 7);
}

}  // namespace

TEST_CASE("admissibility window") {
  auto g = fixture_m_graph();
  auto gid = [&](const std::string& type, const std::string& label) {
    return g.global_id(node(g, type, label));
  };

  SUBCASE("candidate later than the reaching step passes") {
    // Pattern [T1, Drama], candidate T3: title became reachable at step 2,
    // the window is empty, and T3 > root T1.
    std::vector<std::uint32_t> pattern{gid("title", "T1"), gid("genre", "Drama")};
    CHECK(detail::window_admissible(pattern, 2, gid("title", "T3"), false));
  }
  SUBCASE("node added after the reaching step blocks") {
    // Pattern [T1, Drama, History], candidate T3: History was added after
    // step 2 and is larger than T3.
    std::vector<std::uint32_t> pattern{gid("title", "T1"), gid("genre", "Drama"),
                                       gid("genre", "History")};
    CHECK(!detail::window_admissible(pattern, 2, gid("title", "T3"), false));
  }
  SUBCASE("root minimality blocks smaller candidates") {
    std::vector<std::uint32_t> pattern{gid("genre", "Drama")};
    CHECK(!detail::window_admissible(pattern, 1, gid("title", "T1"), false));
  }
  SUBCASE("literal reading includes the reaching node in the window") {
    // Same [T1, Drama] + T3 case: the literal window contains Drama > T3.
    std::vector<std::uint32_t> pattern{gid("title", "T1"), gid("genre", "Drama")};
    CHECK(!detail::window_admissible(pattern, 2, gid("title", "T3"), true));
  }
}

TEST_CASE("movie fixture yields exactly its two maximal patterns") {
  auto g = fixture_m_graph();
  auto sets = emitted_sets(g, {});
  REQUIRE(sets.size() == 2);
  std::set<std::set<std::string>> found;
  for (const auto& s : sets) found.insert(labels_of(g, s));
  CHECK(found == std::set<std::set<std::string>>{
                     {"T1", "T3", "Drama", "History", "2010"},
                     {"T2", "Comedy", "2009"}});
}

TEST_CASE("each fixture pattern comes from its minimum-node root") {
  auto g = fixture_m_graph();
  std::vector<Pattern> patterns = mine_all(g, {});
  REQUIRE(patterns.size() == 2);
  // Discovery order is depth-first by root; T1's subtree is explored first
  // and yields the larger pattern in representative-permutation order.
  CHECK(g.label(patterns[0].nodes.front()) == "T1");
  std::vector<std::string> order;
  for (const NodeRef& n : patterns[0].nodes) order.push_back(g.label(n));
  CHECK(order == std::vector<std::string>{"T1", "Drama", "T3", "History", "2010"});
  CHECK(g.label(patterns[1].nodes.front()) == "T2");
  CHECK(patterns[0].edge_count == 6);
  CHECK(patterns[1].edge_count == 2);
}

TEST_CASE("literal pseudocode readings are available but incomplete") {
  auto g = fixture_m_graph();
  MineOptions opts;
  SUBCASE("literal window blocks every permutation of the big pattern") {
    opts.literal_window = true;
    auto sets = emitted_sets(g, opts);
    bool found_big = false;
    for (const auto& s : sets)
      if (s.size() == 5) found_big = true;
    CHECK(!found_big);
  }
  SUBCASE("literal emission guard never fires at an endpoint") {
    opts.literal_emit_guard = true;
    CHECK(emitted_sets(g, opts).empty());
  }
}

TEST_CASE("bipartite fixture yields the three maximal bicliques") {
  auto g = fixture_b_graph();
  auto sets = emitted_sets(g, {});
  std::set<std::set<std::string>> found;
  for (const auto& s : sets) found.insert(labels_of(g, s));
  CHECK(found == std::set<std::set<std::string>>{
                     {"T1", "T2", "I1", "I2"},
                     {"T1", "T2", "T4", "I1"},
                     {"T3", "I3"}});
}

TEST_CASE("edgeless graph yields nothing by default") {
  KPartiteGraph::Builder b;
  b.add_entity_type("a", {"x", "y"});
  b.add_entity_type("b", {"z"});
  b.add_edge_type("r", "a", "b");
  auto g = b.build();
  CHECK(mine_all(g, {}).empty());
  // min_nodes = 1 deems isolated nodes maximal singletons.
  MineOptions singles;
  singles.min_nodes = 1;
  CHECK(mine_all(g, singles).size() == 3);
}

TEST_CASE("is_maximal on the movie fixture") {
  auto g = fixture_m_graph();
  std::vector<NodeRef> big{node(g, "title", "T1"), node(g, "title", "T3"),
                           node(g, "genre", "Drama"), node(g, "genre", "History"),
                           node(g, "year", "2010")};
  CHECK(is_maximal(g, big));
  std::vector<NodeRef> partial{node(g, "title", "T1"), node(g, "genre", "Drama")};
  CHECK(!is_maximal(g, partial));
  std::vector<NodeRef> small{node(g, "title", "T2"), node(g, "genre", "Comedy")};
  CHECK(!is_maximal(g, small));  // 2009 still extends it
  std::vector<NodeRef> single{node(g, "title", "T1")};
  CHECK_THROWS_AS(is_maximal(g, single), std::invalid_argument);
}

TEST_CASE("all-CCS mode matches the brute-force CCS count") {
  auto g = fixture_m_graph();
  MineOptions opts;
  opts.maximal_only = false;
  opts.prune = false;
  auto sets = emitted_sets(g, opts);
  CHECK(sets == all_ccs_bruteforce(g, 2));
}

TEST_CASE("maximal output equals the exhaustive oracle on a random corpus") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto g = corpus_graph(seed);
    if (g.node_count() > 24) continue;
    auto mined = emitted_sets(g, {});
    auto oracle = all_mccs_bruteforce(g, 2);
    REQUIRE_MESSAGE(mined == oracle, "seed " << seed);
  }
}

TEST_CASE("all-CCS enumeration is exactly-once on a random corpus") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    auto g = corpus_graph(seed);
    if (g.node_count() > 18) continue;  // keep the 2^N oracle cheap
    MineOptions opts;
    opts.maximal_only = false;
    opts.prune = false;
    std::size_t emissions = mine_all(g, opts).size();
    auto sets = emitted_sets(g, opts);
    CHECK(emissions == sets.size());  // no duplicates
    CHECK(sets == all_ccs_bruteforce(g, 2));
  }
}

TEST_CASE("pruning never changes the maximal result") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto g = corpus_graph(seed);
    MineOptions no_prune;
    no_prune.prune = false;
    CHECK(emitted_sets(g, {}) == emitted_sets(g, no_prune));
  }
}

TEST_CASE("bipartite maximal patterns are exactly the maximal tiles") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    RandomGraphSpec spec;
    spec.types.push_back({"transaction", 3 + trial % 5});
    spec.types.push_back({"item", 2 + trial % 4});
    spec.edge_types.push_back(
        {"bought", "transaction", "item", 0.2 + 0.2 * (trial % 4)});
    auto g = random_graph(spec, rng());
    CHECK(emitted_sets(g, {}) == maximal_tiles_bruteforce(g));
  }
}

TEST_CASE("require_all_types keeps only patterns spanning every type") {
  auto g = fixture_m_graph();
  MineOptions opts;
  opts.require_all_types = true;
  CHECK(emitted_sets(g, opts).size() == 2);  // both span all three types

  // A type that never occurs in a pattern empties the output.
  KPartiteGraph::Builder b;
  b.add_entity_type("transaction", {"T1", "T2"});
  b.add_entity_type("item", {"I1"});
  b.add_entity_type("unused", {"U1"});
  b.add_edge_type("bought", "transaction", "item");
  b.add_edge_type("tagged", "item", "unused");
  b.add_edge("bought", "T1", "I1");
  b.add_edge("bought", "T2", "I1");
  auto g2 = b.build();
  CHECK(emitted_sets(g2, opts).empty());
  CHECK(!emitted_sets(g2, {}).empty());
}

TEST_CASE("emitted node sets do not depend on input row order") {
  auto schema = parse_schema(kFixtureMSchema);
  auto tables = fixture_m_tables();
  std::map<std::string, std::string> shuffled = {
      {"of_genre.csv",
       "title,genre\nT2,Comedy\nT3,History\nT1,History\nT3,Drama\nT1,Drama\n"},
      {"film_year.csv", "title,year\nT2,2009\nT3,2010\nT1,2010\n"},
  };
  auto g1 = KPartiteGraph::from_mrd(ingest(schema, tables));
  auto g2 = KPartiteGraph::from_mrd(ingest(schema, shuffled));
  auto p1 = mine_all(g1, {});
  auto p2 = mine_all(g2, {});
  REQUIRE(p1.size() == p2.size());
  for (std::size_t i = 0; i < p1.size(); ++i)
    CHECK(canonical_key(g1, p1[i].nodes) == canonical_key(g2, p2[i].nodes));
}

TEST_CASE("multithreaded mining matches the sequential stream") {
  for (std::uint64_t seed : {3ull, 11ull, 19ull}) {
    auto g = corpus_graph(seed);
    MineOptions threaded;
    threaded.threads = 4;
    auto sequential = mine_all(g, {});
    auto parallel = mine_all(g, threaded);
    REQUIRE(sequential.size() == parallel.size());
    for (std::size_t i = 0; i < sequential.size(); ++i)
      CHECK(sequential[i].nodes == parallel[i].nodes);
  }
}

TEST_CASE("every emitted pattern satisfies the CCS definition") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = corpus_graph(seed);
    for (const Pattern& p : mine_all(g, {})) {
      CHECK(is_ccs(g, p.sorted_nodes()));
      // Every proper prefix of the representative permutation is a CCS.
      for (std::size_t len = 1; len < p.nodes.size(); ++len) {
        NodeSet prefix(p.nodes.begin(), p.nodes.begin() + len);
        std::sort(prefix.begin(), prefix.end());
        CHECK(is_ccs(g, prefix));
      }
    }
  }
}

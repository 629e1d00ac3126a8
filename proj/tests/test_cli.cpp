#include <doctest.h>

#include <cstdlib>
#include <sys/wait.h>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fixtures.hpp"
#include "rminer/io.hpp"
#include "rminer/maxent.hpp"
#include "rminer/miner.hpp"
#include "rminer/schema.hpp"
#include "rminer/score.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace rminer;
using namespace rminer::tests;

namespace {

int run_cli(const std::string& args) {
  std::string cmd = std::string(RMINER_CLI_PATH) + " " + args + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<json> read_jsonl(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::vector<json> records;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) records.push_back(json::parse(line));
  return records;
}

// A scratch directory seeded with the movie fixture dataset.
struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() /
          ("rminer_cli_test_" + std::to_string(::getpid()) + "_" +
           std::to_string(counter++));
    fs::create_directories(dir);
    std::ofstream(dir / "schema.json") << kFixtureMSchema;
    for (const auto& [name, text] : fixture_m_tables())
      std::ofstream(dir / name) << text;
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string schema() const { return (dir / "schema.json").string(); }
  std::string path(const std::string& name) const {
    return (dir / name).string();
  }
  static inline int counter = 0;
};

}  // namespace

TEST_CASE("mine writes the two fixture patterns") {
  Workspace ws;
  REQUIRE(run_cli("mine --schema " + ws.schema() + " --out " +
                  ws.path("patterns.jsonl")) == 0);
  auto records = read_jsonl(ws.dir / "patterns.jsonl");
  REQUIRE(records.size() == 2);
  CHECK(records[0]["nodes"]["title"] == json::array({"T1", "T3"}));
  CHECK(records[0]["nodes"]["genre"] == json::array({"Drama", "History"}));
  CHECK(records[0]["nodes"]["year"] == json::array({"2010"}));
  CHECK(records[0]["edge_count"] == 6);
  CHECK(records[1]["nodes"]["title"] == json::array({"T2"}));
  CHECK(records[1]["edge_count"] == 2);

  SUBCASE("require-all-types leaves the fixture output unchanged") {
    REQUIRE(run_cli("mine --schema " + ws.schema() +
                    " --require-all-types --out " + ws.path("strict.jsonl")) ==
            0);
    CHECK(slurp(ws.dir / "strict.jsonl") == slurp(ws.dir / "patterns.jsonl"));
  }
  SUBCASE("repeat runs are byte-identical") {
    REQUIRE(run_cli("mine --schema " + ws.schema() + " --out " +
                    ws.path("again.jsonl")) == 0);
    CHECK(slurp(ws.dir / "again.jsonl") == slurp(ws.dir / "patterns.jsonl"));
  }
  SUBCASE("all-ccs mode emits every connected complete subgraph") {
    REQUIRE(run_cli("mine --schema " + ws.schema() +
                    " --all-ccs --no-prune --out " + ws.path("all.jsonl")) ==
            0);
    CHECK(read_jsonl(ws.dir / "all.jsonl").size() > 2);
  }
}

TEST_CASE("rank orders the mined stream with the density default") {
  Workspace ws;
  REQUIRE(run_cli("mine --schema " + ws.schema() + " --out " +
                  ws.path("patterns.jsonl")) == 0);
  REQUIRE(run_cli("rank --schema " + ws.schema() + " --patterns " +
                  ws.path("patterns.jsonl") + " --out " +
                  ws.path("ranked.jsonl") + " --model-dump " +
                  ws.path("model.json")) == 0);
  auto records = read_jsonl(ws.dir / "ranked.jsonl");
  REQUIRE(records.size() == 2);
  CHECK(records[0]["rank"] == 1);
  CHECK(records[1]["rank"] == 2);
  CHECK(records[0]["interestingness"].get<double>() >
        records[1]["interestingness"].get<double>());
  // p defaults to the database density 8/15.
  for (const auto& r : records) {
    std::size_t n = 0;
    for (const auto& [type, labels] : r["nodes"].items()) n += labels.size();
    CHECK(r["description_length_bits"].get<double>() ==
          doctest::Approx(description_length(8, n, 8.0 / 15.0)).epsilon(1e-9));
  }
  CHECK(fs::exists(ws.dir / "model.json"));

  SUBCASE("explicit p and top_k are honoured") {
    REQUIRE(run_cli("rank --schema " + ws.schema() + " --patterns " +
                    ws.path("patterns.jsonl") + " --out " +
                    ws.path("top.jsonl") + " --p 0.5 --top 1") == 0);
    auto top = read_jsonl(ws.dir / "top.jsonl");
    REQUIRE(top.size() == 1);
    CHECK(top[0]["rank"] == 1);
    std::size_t n = 0;
    for (const auto& [type, labels] : top[0]["nodes"].items())
      n += labels.size();
    // Every node costs one bit at p = 1/2.
    CHECK(top[0]["description_length_bits"].get<double>() ==
          doctest::Approx(8.0).epsilon(1e-12));
    CHECK(n == 3);
  }
}

TEST_CASE("file round-trip matches the in-process pipeline") {
  Workspace ws;
  REQUIRE(run_cli("mine --schema " + ws.schema() + " --out " +
                  ws.path("patterns.jsonl")) == 0);
  REQUIRE(run_cli("rank --schema " + ws.schema() + " --patterns " +
                  ws.path("patterns.jsonl") + " --out " +
                  ws.path("ranked.jsonl")) == 0);

  auto schema = parse_schema(kFixtureMSchema);
  auto graph = KPartiteGraph::from_mrd(ingest(schema, ws.dir));
  auto patterns = mine_all(graph, {});
  auto ranked = rank(MaxEntModel::fit(graph), graph, patterns);
  std::ostringstream expected;
  io::write_ranked(expected, graph, ranked);
  CHECK(slurp(ws.dir / "ranked.jsonl") == expected.str());
}

TEST_CASE("stats reports the fixture counts") {
  Workspace ws;
  std::string cmd = std::string(RMINER_CLI_PATH) + " stats --schema " +
                    ws.schema() + " > " + ws.path("stats.json") +
                    " 2>/dev/null";
  REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  auto doc = json::parse(slurp(ws.dir / "stats.json"));
  CHECK(doc["entity_types"]["title"] == 3);
  CHECK(doc["entity_types"]["genre"] == 3);
  CHECK(doc["entity_types"]["year"] == 2);
  CHECK(doc["relationship_types"]["of_genre"] == 5);
  CHECK(doc["relationship_types"]["film_year"] == 3);
  CHECK(doc["total_nodes"] == 8);
  CHECK(doc["total_edges"] == 8);
  CHECK(doc["density"].get<double>() ==
        doctest::Approx(8.0 / 15.0).epsilon(1e-12));
}

TEST_CASE("embed writes a mineable augmented dataset") {
  Workspace ws;
  std::string out_dir = ws.path("augmented");
  REQUIRE(run_cli("embed --schema " + ws.schema() +
                  " --k 2 --hub title --satellites genre --seed 9 --out-dir " +
                  out_dir) == 0);
  CHECK(fs::exists(fs::path(out_dir) / "schema.json"));
  CHECK(fs::exists(fs::path(out_dir) / "ground_truth.json"));
  auto truth = json::parse(slurp(fs::path(out_dir) / "ground_truth.json"));
  CHECK(truth["labels"]["title"].size() == 2);
  CHECK(truth["labels"]["genre"].size() == 2);
  CHECK(truth["edges"].size() == 4);

  // The emitted dataset is consumable by the other subcommands.
  REQUIRE(run_cli("mine --schema " + out_dir + "/schema.json --out " +
                  ws.path("aug_patterns.jsonl")) == 0);
  CHECK(!read_jsonl(ws.dir / "aug_patterns.jsonl").empty());
}

TEST_CASE("exit codes distinguish usage and data errors") {
  Workspace ws;
  CHECK(run_cli("mine --bogus-flag") == 1);
  CHECK(run_cli("definitely-not-a-subcommand") == 1);
  CHECK(run_cli("mine --schema " + ws.path("missing.json") + " --out " +
                ws.path("out.jsonl")) == 2);
  std::ofstream(ws.dir / "broken.jsonl") << "{\"nodes\": \"not-an-object\"}\n";
  CHECK(run_cli("rank --schema " + ws.schema() + " --patterns " +
                ws.path("broken.jsonl") + " --out " + ws.path("out.jsonl")) ==
        2);
}

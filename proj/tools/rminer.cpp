#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rminer/errors.hpp"
#include "rminer/io.hpp"
#include "rminer/maxent.hpp"
#include "rminer/miner.hpp"
#include "rminer/schema.hpp"
#include "rminer/score.hpp"
#include "rminer/synth.hpp"

namespace fs = std::filesystem;

namespace {

rminer::KPartiteGraph load_graph(const std::string& schema_path) {
  std::ifstream in(schema_path, std::ios::binary);
  if (!in)
    throw rminer::DataError("cannot read schema file \"" + schema_path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  auto schema = rminer::parse_schema(buf.str());
  auto mrd = rminer::ingest(schema, fs::path(schema_path).parent_path());
  return rminer::KPartiteGraph::from_mrd(mrd);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rminer::DataError("cannot write \"" + path + "\"");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mine and rank maximal connected complete subgraphs from a "
               "multi-relational database"};
  app.require_subcommand(1);

  // mine
  auto* mine_cmd = app.add_subcommand(
      "mine", "Enumerate MCCS patterns (or all CCSs) into a JSONL stream");
  std::string mine_schema, mine_out;
  rminer::MineOptions mine_opts;
  bool all_ccs = false, no_prune = false;
  mine_cmd->add_option("--schema", mine_schema, "Schema descriptor JSON")
      ->required();
  mine_cmd->add_option("--out", mine_out, "Output pattern stream (JSONL)")
      ->required();
  mine_cmd->add_flag("--all-ccs", all_ccs, "Emit every CCS, not only maximal");
  mine_cmd->add_option("--min-nodes", mine_opts.min_nodes,
                       "Minimum pattern size")
      ->default_val(2)
      ->check(CLI::PositiveNumber);
  mine_cmd->add_flag("--require-all-types", mine_opts.require_all_types,
                     "Keep only patterns with a node of every entity type");
  mine_cmd->add_flag("--no-prune", no_prune, "Disable subsumption pruning");
  mine_cmd->add_option("--threads", mine_opts.threads, "Worker threads")
      ->default_val(1)
      ->check(CLI::PositiveNumber);

  // rank
  auto* rank_cmd = app.add_subcommand(
      "rank", "Fit the background model and rank a pattern stream");
  std::string rank_schema, rank_patterns, rank_out, rank_model_dump;
  double rank_p = -1.0;
  long long rank_top = -1;
  int rank_threads = 1;
  rank_cmd->add_option("--schema", rank_schema, "Schema descriptor JSON")
      ->required();
  rank_cmd->add_option("--patterns", rank_patterns, "Pattern stream (JSONL)")
      ->required();
  rank_cmd->add_option("--out", rank_out, "Ranked output (JSONL)")->required();
  rank_cmd->add_option("--p", rank_p,
                       "Membership probability; defaults to database density");
  rank_cmd->add_option("--top", rank_top, "Keep only the top N patterns");
  rank_cmd->add_option("--model-dump", rank_model_dump,
                       "Also write the fitted model as JSON");
  rank_cmd->add_option("--threads", rank_threads, "Worker threads")
      ->default_val(1)
      ->check(CLI::PositiveNumber);

  // embed
  auto* embed_cmd = app.add_subcommand(
      "embed", "Plant an artificial pattern and write the augmented dataset");
  std::string embed_schema, embed_out_dir, embed_hub, embed_satellites;
  rminer::EmbedSpec embed_spec;
  embed_cmd->add_option("--schema", embed_schema, "Schema descriptor JSON")
      ->required();
  embed_cmd->add_option("--k", embed_spec.k, "Nodes added per selected type")
      ->required()
      ->check(CLI::PositiveNumber);
  embed_cmd->add_option("--hub", embed_hub, "Hub entity type")->required();
  embed_cmd
      ->add_option("--satellites", embed_satellites,
                   "Comma-separated satellite entity types")
      ->required();
  embed_cmd->add_option("--seed", embed_spec.seed, "RNG seed")->default_val(0);
  embed_cmd->add_option("--out-dir", embed_out_dir, "Output directory")
      ->required();

  // stats
  auto* stats_cmd =
      app.add_subcommand("stats", "Print node, edge and density statistics");
  std::string stats_schema;
  stats_cmd->add_option("--schema", stats_schema, "Schema descriptor JSON")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*mine_cmd) {
      mine_opts.maximal_only = !all_ccs;
      mine_opts.prune = !no_prune;
      auto graph = load_graph(mine_schema);
      auto patterns = rminer::mine_all(graph, mine_opts);
      auto out = open_output(mine_out);
      rminer::io::write_patterns(out, graph, patterns);
    } else if (*rank_cmd) {
      auto graph = load_graph(rank_schema);
      std::ifstream pin(rank_patterns, std::ios::binary);
      if (!pin)
        throw rminer::DataError("cannot read pattern stream \"" +
                                rank_patterns + "\"");
      auto patterns = rminer::io::read_patterns(pin, graph);
      auto model = rminer::MaxEntModel::fit(graph, {}, rank_threads);
      rminer::RankOptions opts;
      if (rank_p > 0) opts.p = rank_p;
      if (rank_top >= 0) opts.top_k = static_cast<std::size_t>(rank_top);
      auto ranked = rminer::rank(model, graph, patterns, opts);
      auto out = open_output(rank_out);
      rminer::io::write_ranked(out, graph, ranked);
      if (!rank_model_dump.empty()) {
        auto dump = open_output(rank_model_dump);
        rminer::io::write_model_dump(dump, graph, model);
      }
    } else if (*embed_cmd) {
      auto graph = load_graph(embed_schema);
      embed_spec.hub_type = embed_hub;
      embed_spec.satellite_types.clear();
      std::stringstream ss(embed_satellites);
      std::string part;
      while (std::getline(ss, part, ','))
        if (!part.empty()) embed_spec.satellite_types.push_back(part);
      auto [augmented, truth] = rminer::embed(graph, embed_spec);
      rminer::io::write_dataset(embed_out_dir, augmented);
      auto out = open_output((fs::path(embed_out_dir) / "ground_truth.json").string());
      rminer::io::write_ground_truth(out, truth);
    } else if (*stats_cmd) {
      auto graph = load_graph(stats_schema);
      nlohmann::ordered_json doc;
      doc["entity_types"] = nlohmann::ordered_json::object();
      for (std::uint32_t t = 0; t < graph.type_count(); ++t)
        doc["entity_types"][graph.type_name(t)] = graph.labels(t).size();
      doc["relationship_types"] = nlohmann::ordered_json::object();
      for (std::size_t e = 0; e < graph.edge_types().size(); ++e)
        doc["relationship_types"][graph.edge_types()[e].name] =
            graph.edges(e).size();
      doc["total_nodes"] = graph.node_count();
      doc["total_edges"] = graph.edge_count();
      double density = 0.0;
      try {
        density = graph.density();
      } catch (const rminer::DataError&) {
        density = 0.0;  // no edge capacity at all
      }
      doc["density"] = density;
      std::cout << doc.dump(2) << '\n';
    }
  } catch (const rminer::SchemaError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const rminer::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

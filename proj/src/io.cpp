#include "rminer/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "rminer/csv.hpp"
#include "rminer/errors.hpp"

namespace rminer::io {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Nodes grouped by entity type, labels in canonical order; types without
// members are omitted.
ordered_json nodes_json(const KPartiteGraph& graph,
                        std::span<const NodeRef> nodes) {
  std::vector<NodeRef> sorted(nodes.begin(), nodes.end());
  std::sort(sorted.begin(), sorted.end());
  ordered_json out = ordered_json::object();
  for (const NodeRef& n : sorted) {
    const std::string& type = graph.type_name(n.type);
    if (!out.contains(type)) out[type] = ordered_json::array();
    out[type].push_back(graph.label(n));
  }
  return out;
}

std::string safe_filename(const std::string& name) {
  std::string out;
  for (char c : name)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_')
               ? c
               : '_';
  return out;
}

}  // namespace

void write_patterns(std::ostream& out, const KPartiteGraph& graph,
                    std::span<const Pattern> patterns) {
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    ordered_json rec;
    rec["id"] = i;
    rec["nodes"] = nodes_json(graph, patterns[i].nodes);
    rec["edge_count"] = patterns[i].edge_count;
    out << rec.dump() << '\n';
  }
}

std::vector<Pattern> read_patterns(std::istream& in,
                                   const KPartiteGraph& graph) {
  std::vector<Pattern> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw DataError("patterns: line " + std::to_string(line_no) +
                      " is not valid JSON: " + e.what());
    }
    if (!rec.is_object() || !rec.contains("nodes") || !rec["nodes"].is_object())
      throw DataError("patterns: line " + std::to_string(line_no) +
                      " has no \"nodes\" object");
    Pattern p;
    for (const auto& [type_name, labels] : rec["nodes"].items()) {
      int t = graph.type_index(type_name);
      if (t < 0)
        throw DataError("patterns: unknown entity type \"" + type_name + "\"");
      if (!labels.is_array())
        throw DataError("patterns: labels of \"" + type_name +
                        "\" must be an array");
      for (const auto& label : labels) {
        if (!label.is_string())
          throw DataError("patterns: labels must be strings");
        int i = graph.label_index(static_cast<std::uint32_t>(t),
                                  label.get<std::string>());
        if (i < 0)
          throw DataError("patterns: label \"" + label.get<std::string>() +
                          "\" not present in entity type \"" + type_name + "\"");
        p.nodes.push_back({static_cast<std::uint32_t>(t),
                           static_cast<std::uint32_t>(i)});
      }
    }
    std::sort(p.nodes.begin(), p.nodes.end());
    p.nodes.erase(std::unique(p.nodes.begin(), p.nodes.end()), p.nodes.end());
    p.edge_count = induced_edge_count(graph, p.nodes);
    out.push_back(std::move(p));
  }
  return out;
}

void write_ranked(std::ostream& out, const KPartiteGraph& graph,
                  std::span<const RankedPattern> ranked) {
  for (const RankedPattern& rp : ranked) {
    // Floats are hand-formatted to 12 significant digits.
    out << "{\"rank\": " << rp.rank
        << ", \"interestingness\": " << format_double(rp.interestingness)
        << ", \"self_information_bits\": "
        << format_double(rp.self_information_bits)
        << ", \"description_length_bits\": "
        << format_double(rp.description_length_bits)
        << ", \"nodes\": " << nodes_json(graph, rp.pattern.nodes).dump()
        << ", \"edge_count\": " << rp.pattern.edge_count << "}\n";
  }
}

void write_graph_dump(std::ostream& out, const KPartiteGraph& graph) {
  const auto edge_types = graph.edge_types();
  for (std::size_t e = 0; e < edge_types.size(); ++e) {
    const auto& et = edge_types[e];
    for (const auto& [li, ri] : graph.edges(e)) {
      ordered_json rec;
      rec["type"] = et.name;
      rec["left"] = graph.labels(et.left)[li];
      rec["right"] = graph.labels(et.right)[ri];
      out << rec.dump() << '\n';
    }
  }
}

void write_model_dump(std::ostream& out, const KPartiteGraph& graph,
                      const MaxEntModel& model) {
  ordered_json doc = ordered_json::array();
  const auto edge_types = graph.edge_types();
  for (std::size_t e = 0; e < edge_types.size(); ++e) {
    const RelationshipModel& m = model.relationship(e);
    ordered_json rec;
    rec["relationship"] = edge_types[e].name;
    rec["left_type"] = graph.type_name(edge_types[e].left);
    rec["right_type"] = graph.type_name(edge_types[e].right);
    ordered_json lambda = ordered_json::array();
    ordered_json frozen_rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (m.row_frozen(i)) {
        lambda.push_back(nullptr);
        frozen_rows.push_back(graph.labels(edge_types[e].left)[i]);
      } else {
        lambda.push_back(m.lambda(i));
      }
    }
    ordered_json mu = ordered_json::array();
    ordered_json frozen_cols = ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m.col_frozen(j)) {
        mu.push_back(nullptr);
        frozen_cols.push_back(graph.labels(edge_types[e].right)[j]);
      } else {
        mu.push_back(m.mu(j));
      }
    }
    rec["lambda"] = std::move(lambda);
    rec["mu"] = std::move(mu);
    rec["frozen_rows"] = std::move(frozen_rows);
    rec["frozen_cols"] = std::move(frozen_cols);
    rec["residual"] = m.achieved_residual();
    rec["iterations"] = m.iterations();
    doc.push_back(std::move(rec));
  }
  out << doc.dump(2) << '\n';
}

void write_dataset(const std::filesystem::path& dir,
                   const KPartiteGraph& graph) {
  std::filesystem::create_directories(dir);
  const auto edge_types = graph.edge_types();

  ordered_json schema;
  schema["entity_types"] = ordered_json::array();
  for (std::uint32_t t = 0; t < graph.type_count(); ++t)
    schema["entity_types"].push_back({{"name", graph.type_name(t)}});
  schema["relationship_types"] = ordered_json::array();
  for (std::size_t e = 0; e < edge_types.size(); ++e) {
    const auto& et = edge_types[e];
    std::string file = safe_filename(et.name) + ".csv";
    schema["relationship_types"].push_back(
        {{"name", et.name},
         {"left", graph.type_name(et.left)},
         {"right", graph.type_name(et.right)},
         {"file", file},
         {"left_column", graph.type_name(et.left)},
         {"right_column", graph.type_name(et.right)}});

    std::ofstream csv_out(dir / file, std::ios::binary);
    csv_out << csv::escape_field(graph.type_name(et.left)) << ','
            << csv::escape_field(graph.type_name(et.right)) << '\n';
    for (const auto& [li, ri] : graph.edges(e))
      csv_out << csv::escape_field(graph.labels(et.left)[li]) << ','
              << csv::escape_field(graph.labels(et.right)[ri]) << '\n';
    // Isolated nodes still need to appear in the domain: a row with an
    // empty partner value records the label without creating an instance.
    for (std::uint32_t t : {et.left, et.right}) {
      for (std::uint32_t i = 0; i < graph.labels(t).size(); ++i) {
        if (graph.degree({t, i}) == 0) {
          if (t == et.left)
            csv_out << csv::escape_field(graph.labels(t)[i]) << ",\n";
          else
            csv_out << ',' << csv::escape_field(graph.labels(t)[i]) << '\n';
        }
      }
    }
  }
  std::ofstream schema_out(dir / "schema.json", std::ios::binary);
  schema_out << schema.dump(2) << '\n';
}

void write_ground_truth(std::ostream& out, const GroundTruth& truth) {
  ordered_json doc;
  doc["labels"] = ordered_json::object();
  for (const auto& [type, labels] : truth.labels) doc["labels"][type] = labels;
  doc["edges"] = ordered_json::array();
  for (const auto& [et, l, r] : truth.edges)
    doc["edges"].push_back({et, l, r});
  out << doc.dump(2) << '\n';
}

}  // namespace rminer::io

#include "rminer/schema.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "rminer/csv.hpp"
#include "rminer/errors.hpp"

namespace rminer {

namespace {

using nlohmann::json;

std::string require_string(const json& obj, const char* key,
                          const char* where) {
  if (!obj.contains(key) || !obj[key].is_string())
    throw SchemaError(std::string("schema: missing or non-string \"") + key +
                      "\" in " + where);
  return obj[key].get<std::string>();
}

}  // namespace

int SchemaDescriptor::entity_type_index(const std::string& name) const {
  for (std::size_t i = 0; i < entity_types.size(); ++i)
    if (entity_types[i] == name) return static_cast<int>(i);
  return -1;
}

std::size_t MultiRelationalDatabase::total_instances() const {
  std::size_t n = 0;
  for (const auto& set : instances) n += set.size();
  return n;
}

SchemaDescriptor parse_schema(const std::string& descriptor_text) {
  json doc;
  try {
    doc = json::parse(descriptor_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("schema: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("schema: top level must be an object");

  SchemaDescriptor schema;
  if (!doc.contains("entity_types") || !doc["entity_types"].is_array())
    throw SchemaError("schema: missing \"entity_types\" array");
  for (const auto& et : doc["entity_types"]) {
    if (!et.is_object())
      throw SchemaError("schema: entity type entries must be objects");
    schema.entity_types.push_back(require_string(et, "name", "entity type"));
  }
  {
    std::unordered_set<std::string> seen;
    for (const auto& name : schema.entity_types)
      if (!seen.insert(name).second)
        throw SchemaError("schema: duplicate entity type \"" + name + "\"");
  }

  if (doc.contains("relationship_types")) {
    if (!doc["relationship_types"].is_array())
      throw SchemaError("schema: \"relationship_types\" must be an array");
    for (const auto& rt : doc["relationship_types"]) {
      if (!rt.is_object())
        throw SchemaError("schema: relationship type entries must be objects");
      RelationshipTypeDecl decl;
      decl.name = require_string(rt, "name", "relationship type");
      decl.left = require_string(rt, "left", "relationship type");
      decl.right = require_string(rt, "right", "relationship type");
      decl.file = require_string(rt, "file", "relationship type");
      decl.left_column = require_string(rt, "left_column", "relationship type");
      decl.right_column = require_string(rt, "right_column", "relationship type");
      schema.relationship_types.push_back(std::move(decl));
    }
  }

  // Expand attribute tables: each attribute column becomes an entity type
  // named after the column, or <file>.<column> when that name collides
  // with a declared entity type or another attribute column.
  if (doc.contains("attribute_tables")) {
    if (!doc["attribute_tables"].is_array())
      throw SchemaError("schema: \"attribute_tables\" must be an array");
    std::unordered_map<std::string, int> column_uses;
    for (const auto& name : schema.entity_types) column_uses[name] += 1;
    struct AttrEntry {
      std::string file, key_column, key_entity, column;
    };
    std::vector<AttrEntry> entries;
    for (const auto& at : doc["attribute_tables"]) {
      if (!at.is_object())
        throw SchemaError("schema: attribute table entries must be objects");
      AttrEntry entry;
      entry.file = require_string(at, "file", "attribute table");
      entry.key_column = require_string(at, "key_column", "attribute table");
      entry.key_entity = require_string(at, "key_entity", "attribute table");
      if (schema.entity_type_index(entry.key_entity) < 0)
        throw SchemaError("schema: attribute table key entity \"" +
                          entry.key_entity + "\" is not a declared entity type");
      if (!at.contains("attribute_columns") || !at["attribute_columns"].is_array())
        throw SchemaError("schema: attribute table missing \"attribute_columns\"");
      for (const auto& col : at["attribute_columns"]) {
        if (!col.is_string())
          throw SchemaError("schema: attribute column names must be strings");
        entry.column = col.get<std::string>();
        column_uses[entry.column] += 1;
        entries.push_back(entry);
      }
    }
    std::unordered_set<std::string> assigned(schema.entity_types.begin(),
                                             schema.entity_types.end());
    for (const auto& entry : entries) {
      std::string type_name = column_uses[entry.column] > 1
                                  ? entry.file + "." + entry.column
                                  : entry.column;
      if (!assigned.insert(type_name).second)
        throw SchemaError("schema: attribute entity type name \"" + type_name +
                          "\" collides even after qualification");
      schema.entity_types.push_back(type_name);
      RelationshipTypeDecl decl;
      decl.name = "attr:" + type_name;
      decl.left = entry.key_entity;
      decl.right = type_name;
      decl.file = entry.file;
      decl.left_column = entry.key_column;
      decl.right_column = entry.column;
      schema.relationship_types.push_back(std::move(decl));
    }
  }

  std::unordered_set<std::string> rel_names;
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& rt : schema.relationship_types) {
    if (!rel_names.insert(rt.name).second)
      throw SchemaError("schema: duplicate relationship type \"" + rt.name + "\"");
    if (schema.entity_type_index(rt.left) < 0)
      throw SchemaError("schema: relationship type \"" + rt.name +
                        "\" references undeclared entity type \"" + rt.left + "\"");
    if (schema.entity_type_index(rt.right) < 0)
      throw SchemaError("schema: relationship type \"" + rt.name +
                        "\" references undeclared entity type \"" + rt.right + "\"");
    if (rt.left == rt.right)
      throw SchemaError("schema: relationship type \"" + rt.name +
                        "\" must join two distinct entity types");
    auto key = rt.left < rt.right ? std::make_pair(rt.left, rt.right)
                                  : std::make_pair(rt.right, rt.left);
    if (!pairs.insert(key).second)
      throw SchemaError("schema: more than one relationship type between \"" +
                        key.first + "\" and \"" + key.second + "\"");
  }
  return schema;
}

MultiRelationalDatabase ingest(const SchemaDescriptor& schema,
                               const TableSource& source) {
  MultiRelationalDatabase mrd;
  mrd.schema = schema;
  mrd.domains.resize(schema.entity_types.size());
  mrd.instances.resize(schema.relationship_types.size());

  std::vector<std::unordered_set<std::string>> seen_labels(
      schema.entity_types.size());
  auto observe = [&](std::size_t type, const std::string& value) {
    if (seen_labels[type].insert(value).second)
      mrd.domains[type].push_back(value);
  };

  // Parse each referenced file once.
  std::unordered_map<std::string, csv::Table> tables;
  for (const auto& rt : schema.relationship_types) {
    if (tables.contains(rt.file)) continue;
    tables.emplace(rt.file, csv::parse(source(rt.file)));
  }

  for (std::size_t r = 0; r < schema.relationship_types.size(); ++r) {
    const auto& rt = schema.relationship_types[r];
    const auto& table = tables.at(rt.file);
    int lc = table.column(rt.left_column);
    int rc = table.column(rt.right_column);
    if (lc < 0)
      throw DataError("ingest: file \"" + rt.file + "\" has no column \"" +
                      rt.left_column + "\"");
    if (rc < 0)
      throw DataError("ingest: file \"" + rt.file + "\" has no column \"" +
                      rt.right_column + "\"");
    std::size_t lt = static_cast<std::size_t>(schema.entity_type_index(rt.left));
    std::size_t rtype =
        static_cast<std::size_t>(schema.entity_type_index(rt.right));

    std::unordered_set<std::string> seen_pairs;
    for (const auto& row : table.rows) {
      const std::string left =
          static_cast<std::size_t>(lc) < row.size() ? row[lc] : "";
      const std::string right =
          static_cast<std::size_t>(rc) < row.size() ? row[rc] : "";
      if (!left.empty()) observe(lt, left);
      if (!right.empty()) observe(rtype, right);
      if (left.empty() || right.empty()) continue;
      if (seen_pairs.insert(left + '\0' + right).second)
        mrd.instances[r].emplace_back(left, right);
    }
  }
  return mrd;
}

MultiRelationalDatabase ingest(const SchemaDescriptor& schema,
                               const std::filesystem::path& base_dir) {
  return ingest(schema, TableSource([&](const std::string& file) {
                  std::ifstream in(base_dir / file, std::ios::binary);
                  if (!in)
                    throw DataError("ingest: cannot read \"" +
                                    (base_dir / file).string() + "\"");
                  std::ostringstream buf;
                  buf << in.rdbuf();
                  return buf.str();
                }));
}

MultiRelationalDatabase ingest(
    const SchemaDescriptor& schema,
    const std::map<std::string, std::string>& tables) {
  return ingest(schema, TableSource([&](const std::string& file) {
                  auto it = tables.find(file);
                  if (it == tables.end())
                    throw DataError("ingest: no table for file \"" + file + "\"");
                  return it->second;
                }));
}

}  // namespace rminer

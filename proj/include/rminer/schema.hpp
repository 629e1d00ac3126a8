#ifndef RMINER_SCHEMA_HPP_
#define RMINER_SCHEMA_HPP_

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace rminer {

struct RelationshipTypeDecl {
  std::string name;
  std::string left;   // entity type name
  std::string right;  // entity type name
  std::string file;
  std::string left_column;
  std::string right_column;
};

// Declared entity types plus relationship types, with any attribute tables
// already expanded: each attribute column becomes an entity type of its own,
// linked to the key entity type by a one-to-many relationship type.
struct SchemaDescriptor {
  std::vector<std::string> entity_types;
  std::vector<RelationshipTypeDecl> relationship_types;

  int entity_type_index(const std::string& name) const;
};

// Parses and validates a JSON schema descriptor. Attribute tables are
// expanded here; the returned descriptor only ever contains entity and
// relationship types. Throws SchemaError.
SchemaDescriptor parse_schema(const std::string& descriptor_text);

struct MultiRelationalDatabase {
  SchemaDescriptor schema;
  // Per entity type: distinct labels in first-appearance order.
  std::vector<std::vector<std::string>> domains;
  // Per relationship type: distinct (left label, right label) pairs in
  // first-appearance order.
  std::vector<std::vector<std::pair<std::string, std::string>>> instances;

  std::size_t total_instances() const;
};

// Maps a file name from the schema to its CSV text.
using TableSource = std::function<std::string(const std::string& file)>;

// Reads every table referenced by the schema and builds the MRD. Empty
// values are skipped; duplicate rows collapse to one instance. Throws
// DataError on missing files or columns.
MultiRelationalDatabase ingest(const SchemaDescriptor& schema,
                               const TableSource& source);

// Convenience: tables are files under base_dir.
MultiRelationalDatabase ingest(const SchemaDescriptor& schema,
                               const std::filesystem::path& base_dir);

// Convenience for tests: tables given as in-memory CSV text.
MultiRelationalDatabase ingest(const SchemaDescriptor& schema,
                               const std::map<std::string, std::string>& tables);

}  // namespace rminer

#endif  // RMINER_SCHEMA_HPP_

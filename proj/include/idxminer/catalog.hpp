#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace idxminer {

// Canonical (lowercase) table.column pair.
struct AttributeRef {
  std::string table;
  std::string column;

  std::string str() const { return table + "." + column; }

  friend bool operator==(const AttributeRef&, const AttributeRef&) = default;
  friend auto operator<=>(const AttributeRef&, const AttributeRef&) = default;
};

struct CatalogColumn {
  std::string name;
  std::uint64_t cardinality = 1;
};

struct CatalogTable {
  std::string name;
  std::uint64_t row_count = 0;
  bool is_large = false;
  std::vector<CatalogColumn> columns;

  const CatalogColumn* find_column(std::string_view column) const;
};

class Catalog {
 public:
  Catalog() = default;
  // Canonicalizes names and checks the table/column invariants.
  explicit Catalog(std::vector<CatalogTable> tables);

  static Catalog from_json(const nlohmann::json& j);
  static Catalog load(const std::filesystem::path& path);
  nlohmann::json to_json() const;

  const std::vector<CatalogTable>& tables() const { return tables_; }
  const CatalogTable* find_table(std::string_view name) const;
  const CatalogTable& table(std::string_view name) const;  // throws ResolveError

  // Qualified names are validated; unqualified ones need a unique owner.
  AttributeRef resolve(std::string_view column,
                       std::optional<std::string_view> table = std::nullopt) const;

  std::uint64_t cardinality(const AttributeRef& attr) const;

 private:
  std::vector<CatalogTable> tables_;
};

std::string to_lower(std::string_view s);

}  // namespace idxminer

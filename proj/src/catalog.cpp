#include "idxminer/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

#include "idxminer/error.hpp"

namespace idxminer {

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

const CatalogColumn* CatalogTable::find_column(std::string_view column) const {
  for (const auto& c : columns) {
    if (c.name == column) return &c;
  }
  return nullptr;
}

Catalog::Catalog(std::vector<CatalogTable> tables) : tables_(std::move(tables)) {
  std::set<std::string> names;
  for (auto& t : tables_) {
    t.name = to_lower(t.name);
    if (t.name.empty()) throw FormatError("catalog table with empty name");
    if (!names.insert(t.name).second) {
      throw FormatError("duplicate catalog table '" + t.name + "'");
    }
    std::set<std::string> cols;
    for (auto& c : t.columns) {
      c.name = to_lower(c.name);
      if (c.name.empty()) throw FormatError("empty column name in table '" + t.name + "'");
      if (!cols.insert(c.name).second) {
        throw FormatError("duplicate column '" + c.name + "' in table '" + t.name + "'");
      }
      if (c.cardinality < 1) {
        throw FormatError("column " + t.name + "." + c.name + " has cardinality < 1");
      }
      if (t.row_count > 0 && c.cardinality > t.row_count) {
        throw FormatError("column " + t.name + "." + c.name +
                          " has cardinality above the table's row_count");
      }
    }
  }
}

Catalog Catalog::from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw FormatError("catalog must be a JSON array of tables");
  std::vector<CatalogTable> tables;
  try {
    for (const auto& jt : j) {
      CatalogTable t;
      t.name = jt.at("name").get<std::string>();
      const auto rows = jt.at("row_count").get<std::int64_t>();
      if (rows < 0) throw FormatError("table '" + t.name + "' has negative row_count");
      t.row_count = static_cast<std::uint64_t>(rows);
      t.is_large = jt.value("is_large", false);
      for (const auto& jc : jt.at("columns")) {
        const auto card = jc.at("cardinality").get<std::int64_t>();
        if (card < 1) {
          throw FormatError("column '" + jc.at("name").get<std::string>() +
                            "' has cardinality < 1");
        }
        t.columns.push_back({jc.at("name").get<std::string>(),
                             static_cast<std::uint64_t>(card)});
      }
      tables.push_back(std::move(t));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("catalog: ") + e.what());
  }
  return Catalog(std::move(tables));
}

Catalog Catalog::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read catalog '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("catalog '" + path.string() + "': " + e.what());
  }
  return from_json(j);
}

nlohmann::json Catalog::to_json() const {
  auto out = nlohmann::json::array();
  for (const auto& t : tables_) {
    auto cols = nlohmann::json::array();
    for (const auto& c : t.columns) cols.push_back({{"name", c.name}, {"cardinality", c.cardinality}});
    out.push_back({{"name", t.name}, {"row_count", t.row_count}, {"is_large", t.is_large},
                   {"columns", cols}});
  }
  return out;
}

const CatalogTable* Catalog::find_table(std::string_view name) const {
  const auto key = to_lower(name);
  for (const auto& t : tables_) {
    if (t.name == key) return &t;
  }
  return nullptr;
}

const CatalogTable& Catalog::table(std::string_view name) const {
  if (const auto* t = find_table(name)) return *t;
  throw ResolveError(ResolveError::Reason::kUnknownTable,
                     "unknown table '" + to_lower(name) + "'");
}

AttributeRef Catalog::resolve(std::string_view column,
                              std::optional<std::string_view> table) const {
  const auto col = to_lower(column);
  if (table) {
    const auto& t = this->table(*table);
    if (!t.find_column(col)) {
      throw ResolveError(ResolveError::Reason::kUnknownColumn,
                         "unknown column '" + t.name + "." + col + "'");
    }
    return {t.name, col};
  }
  const CatalogTable* owner = nullptr;
  for (const auto& t : tables_) {
    if (!t.find_column(col)) continue;
    if (owner) {
      throw ResolveError(ResolveError::Reason::kAmbiguousColumn,
                         "ambiguous column '" + col + "' (owned by " + owner->name +
                             " and " + t.name + ")");
    }
    owner = &t;
  }
  if (!owner) {
    throw ResolveError(ResolveError::Reason::kUnknownColumn, "unknown column '" + col + "'");
  }
  return {owner->name, col};
}

std::uint64_t Catalog::cardinality(const AttributeRef& attr) const {
  const auto* c = table(attr.table).find_column(attr.column);
  if (!c) {
    throw ResolveError(ResolveError::Reason::kUnknownColumn,
                       "unknown column '" + attr.str() + "'");
  }
  return c->cardinality;
}

}  // namespace idxminer

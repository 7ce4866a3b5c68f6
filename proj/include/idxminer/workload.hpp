#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "idxminer/catalog.hpp"
#include "idxminer/sql.hpp"

namespace idxminer {

struct ResolvedPredicate {
  AttributeRef attr;
  sql::PredicateKind kind;

  friend auto operator<=>(const ResolvedPredicate&, const ResolvedPredicate&) = default;
};

struct WorkloadQuery {
  std::string id;  // "Q1", "Q2", ... in file order
  std::string raw_sql;
  sql::StatementKind kind = sql::StatementKind::kSelect;
  std::set<AttributeRef> indexable_attrs;

  // Used by the cost model.
  std::set<std::string> tables;  // FROM tables and UPDATE target
  std::string update_target;     // empty for SELECT
  std::vector<ResolvedPredicate> predicates;
};

struct Workload {
  std::vector<WorkloadQuery> queries;

  bool empty() const { return queries.empty(); }
};

// Splits workload text on ';' (quotes respected), dropping '--' comments and
// blank statements. A final statement without ';' is accepted.
std::vector<std::string> split_statements(std::string_view text);

// Parses, extracts and resolves one statement. Errors are prefixed with `id`.
WorkloadQuery analyze_query(std::string id, std::string_view sql, const Catalog& catalog);

Workload parse_workload(std::string_view text, const Catalog& catalog);
Workload load_workload(const std::filesystem::path& path, const Catalog& catalog);

}  // namespace idxminer

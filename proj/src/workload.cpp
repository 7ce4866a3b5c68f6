#include "idxminer/workload.hpp"

#include <fstream>
#include <sstream>

#include "idxminer/error.hpp"

namespace idxminer {
namespace {

bool blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

std::string trimmed(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

AttributeRef resolve_column(const sql::ColumnName& name, const Catalog& catalog) {
  if (name.qualifier.empty()) return catalog.resolve(name.column);
  return catalog.resolve(name.column, name.qualifier);
}

}  // namespace

std::vector<std::string> split_statements(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  bool in_string = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      cur += c;
      if (c == '\'') in_string = false;  // '' re-enters on the next quote
      continue;
    }
    if (c == '\'') {
      in_string = true;
      cur += c;
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '-') {
      while (i < text.size() && text[i] != '\n') ++i;
      cur += '\n';
    } else if (c == ';') {
      if (!blank(cur)) out.push_back(trimmed(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!blank(cur)) out.push_back(trimmed(cur));
  return out;
}

WorkloadQuery analyze_query(std::string id, std::string_view sql_text, const Catalog& catalog) {
  WorkloadQuery q;
  q.id = std::move(id);
  q.raw_sql = std::string(sql_text);
  sql::Statement stmt;
  try {
    stmt = sql::parse_query(sql_text);
  } catch (const SyntaxError& e) {
    throw SyntaxError(e.position(), e.token(), q.id + ": " + e.what());
  } catch (const UnsupportedError& e) {
    throw Error(q.id + ": " + e.what());
  }
  q.kind = sql::kind_of(stmt);
  try {
    for (const auto& t : sql::referenced_tables(stmt)) q.tables.insert(catalog.table(t).name);
    if (const auto* u = std::get_if<sql::UpdateStmt>(&stmt)) q.update_target = u->table.name;
    for (const auto& name : sql::extract_indexable_attributes(stmt)) {
      q.indexable_attrs.insert(resolve_column(name, catalog));
    }
    for (const auto& p : sql::extract_predicates(stmt)) {
      q.predicates.push_back({resolve_column(p.column, catalog), p.kind});
    }
  } catch (const ResolveError& e) {
    throw ResolveError(e.reason(), q.id + ": " + e.what());
  }
  return q;
}

Workload parse_workload(std::string_view text, const Catalog& catalog) {
  Workload w;
  const auto statements = split_statements(text);
  w.queries.reserve(statements.size());
  for (std::size_t i = 0; i < statements.size(); ++i) {
    w.queries.push_back(analyze_query("Q" + std::to_string(i + 1), statements[i], catalog));
  }
  return w;
}

Workload load_workload(const std::filesystem::path& path, const Catalog& catalog) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read workload '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_workload(buf.str(), catalog);
}

}  // namespace idxminer

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

// Parse tree and analysis for the supported SQL dialect: SELECT (multi-table
// FROM with aliases, WHERE, GROUP BY, HAVING, ORDER BY, scalar / IN / EXISTS
// subqueries, aggregates) and UPDATE ... SET ... WHERE.
namespace idxminer::sql {

struct SelectStmt;

enum class ExprKind {
  kColumn,      // [qualifier.]text
  kNumber,      // text
  kString,      // text (unquoted); qualifier holds a type prefix, e.g. "date"
  kNull,
  kStar,        // * inside COUNT(*) or a select item
  kFunction,    // text(args...), distinct flag for COUNT(DISTINCT x)
  kNegate,      // -args[0]
  kArith,       // args[0] text args[1], text in {+,-,*,/,||}
  kCompare,     // args[0] text args[1], text in {=,<,>,<=,>=,<>}
  kAnd,
  kOr,
  kNot,
  kBetween,     // args = {operand, lo, hi}
  kLike,        // args = {operand, pattern}
  kInList,      // args = {operand, items...}
  kInSubquery,  // args = {operand}, subquery
  kExists,      // subquery
  kIsNull,      // args = {operand}
  kSubquery,    // scalar subquery
  kCase,        // args = {when, then, when, then, ..., [else]}
};

struct Expr {
  ExprKind kind = ExprKind::kNull;
  std::string text;
  std::string qualifier;
  bool negated = false;
  bool distinct = false;
  std::vector<Expr> args;
  std::shared_ptr<const SelectStmt> subquery;
  std::size_t position = 0;
};

struct TableRef {
  std::string name;
  std::string alias;  // empty if none
};

struct SelectItem {
  Expr expr;
  std::string alias;
};

struct OrderItem {
  Expr expr;
  bool descending = false;
};

struct SelectStmt {
  bool distinct = false;
  std::vector<SelectItem> select_list;
  std::vector<TableRef> from;
  std::optional<Expr> where;
  std::vector<Expr> group_by;
  std::optional<Expr> having;
  std::vector<OrderItem> order_by;
};

struct Assignment {
  Expr column;
  Expr value;
};

struct UpdateStmt {
  TableRef table;
  std::vector<Assignment> set;
  std::optional<Expr> where;
};

using Statement = std::variant<SelectStmt, UpdateStmt>;

enum class StatementKind { kSelect, kUpdate };

inline StatementKind kind_of(const Statement& s) {
  return std::holds_alternative<SelectStmt>(s) ? StatementKind::kSelect
                                               : StatementKind::kUpdate;
}

// Throws SyntaxError (with byte offset and token) or UnsupportedError.
// Identifiers are lowercased; a trailing ';' is accepted.
Statement parse_query(std::string_view sql);

// Canonical single-line rendering that parse_query accepts.
std::string to_sql(const Statement& stmt);

// Column name as written, with the qualifier mapped through FROM aliases in
// scope. Empty qualifier means unqualified.
struct ColumnName {
  std::string qualifier;
  std::string column;

  friend auto operator<=>(const ColumnName&, const ColumnName&) = default;
};

// Columns from WHERE, GROUP BY, HAVING and ORDER BY of the statement and all
// of its subqueries. Select-list and SET-list columns are not included.
std::set<ColumnName> extract_indexable_attributes(const Statement& stmt);

enum class PredicateKind { kEquality, kRange };

struct Predicate {
  ColumnName column;
  PredicateKind kind;

  friend auto operator<=>(const Predicate&, const Predicate&) = default;
};

// Sargable predicates in WHERE clauses (all nesting levels): column compared
// with a constant or another column, BETWEEN, LIKE, IN. Negated forms and <>
// are not sargable.
std::vector<Predicate> extract_predicates(const Statement& stmt);

// Every table named in a FROM list or as the UPDATE target.
std::set<std::string> referenced_tables(const Statement& stmt);

}  // namespace idxminer::sql

#include <map>

#include "idxminer/sql.hpp"

namespace idxminer::sql {
namespace {

// ---------------------------------------------------------------- printing

bool is_composite(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kArith:
    case ExprKind::kCompare:
    case ExprKind::kAnd:
    case ExprKind::kOr:
    case ExprKind::kNot:
    case ExprKind::kBetween:
    case ExprKind::kLike:
    case ExprKind::kInList:
    case ExprKind::kInSubquery:
    case ExprKind::kIsNull:
    case ExprKind::kNegate:
    case ExprKind::kExists:
      return true;
    default:
      return false;
  }
}

void print_select(std::string& out, const SelectStmt& s);

void print_expr(std::string& out, const Expr& e);

void print_operand(std::string& out, const Expr& e) {
  if (is_composite(e)) {
    out += '(';
    print_expr(out, e);
    out += ')';
  } else {
    print_expr(out, e);
  }
}

void print_expr(std::string& out, const Expr& e) {
  auto binary = [&](std::string_view op) {
    print_operand(out, e.args[0]);
    out += ' ';
    out += op;
    out += ' ';
    print_operand(out, e.args[1]);
  };
  const char* neg = e.negated ? " NOT" : "";
  switch (e.kind) {
    case ExprKind::kColumn:
      if (!e.qualifier.empty()) out += e.qualifier + ".";
      out += e.text;
      break;
    case ExprKind::kNumber:
      out += e.text;
      break;
    case ExprKind::kString: {
      if (!e.qualifier.empty()) out += e.qualifier + " ";
      out += '\'';
      for (char c : e.text) {
        if (c == '\'') out += '\'';
        out += c;
      }
      out += '\'';
      break;
    }
    case ExprKind::kNull:
      out += "NULL";
      break;
    case ExprKind::kStar:
      out += '*';
      break;
    case ExprKind::kFunction:
      out += e.text + "(";
      if (e.distinct) out += "DISTINCT ";
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) out += ", ";
        print_expr(out, e.args[i]);
      }
      out += ')';
      break;
    case ExprKind::kNegate:
      out += '-';
      print_operand(out, e.args[0]);
      break;
    case ExprKind::kArith:
    case ExprKind::kCompare:
      binary(e.text);
      break;
    case ExprKind::kAnd:
      binary("AND");
      break;
    case ExprKind::kOr:
      binary("OR");
      break;
    case ExprKind::kNot:
      out += "NOT ";
      print_operand(out, e.args[0]);
      break;
    case ExprKind::kBetween:
      print_operand(out, e.args[0]);
      out += neg;
      out += " BETWEEN ";
      print_operand(out, e.args[1]);
      out += " AND ";
      print_operand(out, e.args[2]);
      break;
    case ExprKind::kLike:
      print_operand(out, e.args[0]);
      out += neg;
      out += " LIKE ";
      print_operand(out, e.args[1]);
      break;
    case ExprKind::kInList:
      print_operand(out, e.args[0]);
      out += neg;
      out += " IN (";
      for (std::size_t i = 1; i < e.args.size(); ++i) {
        if (i > 1) out += ", ";
        print_expr(out, e.args[i]);
      }
      out += ')';
      break;
    case ExprKind::kInSubquery:
      print_operand(out, e.args[0]);
      out += neg;
      out += " IN (";
      print_select(out, *e.subquery);
      out += ')';
      break;
    case ExprKind::kExists:
      if (e.negated) out += "NOT ";
      out += "EXISTS (";
      print_select(out, *e.subquery);
      out += ')';
      break;
    case ExprKind::kIsNull:
      print_operand(out, e.args[0]);
      out += e.negated ? " IS NOT NULL" : " IS NULL";
      break;
    case ExprKind::kSubquery:
      out += '(';
      print_select(out, *e.subquery);
      out += ')';
      break;
    case ExprKind::kCase:
      out += "CASE";
      for (std::size_t i = 0; i + 1 < e.args.size(); i += 2) {
        out += " WHEN ";
        print_expr(out, e.args[i]);
        out += " THEN ";
        print_expr(out, e.args[i + 1]);
      }
      if (e.args.size() % 2 == 1) {
        out += " ELSE ";
        print_expr(out, e.args.back());
      }
      out += " END";
      break;
  }
}

void print_table(std::string& out, const TableRef& t) {
  out += t.name;
  if (!t.alias.empty()) out += " " + t.alias;
}

void print_select(std::string& out, const SelectStmt& s) {
  out += "SELECT ";
  if (s.distinct) out += "DISTINCT ";
  for (std::size_t i = 0; i < s.select_list.size(); ++i) {
    if (i) out += ", ";
    print_expr(out, s.select_list[i].expr);
    if (!s.select_list[i].alias.empty()) out += " AS " + s.select_list[i].alias;
  }
  out += " FROM ";
  for (std::size_t i = 0; i < s.from.size(); ++i) {
    if (i) out += ", ";
    print_table(out, s.from[i]);
  }
  if (s.where) {
    out += " WHERE ";
    print_expr(out, *s.where);
  }
  if (!s.group_by.empty()) {
    out += " GROUP BY ";
    for (std::size_t i = 0; i < s.group_by.size(); ++i) {
      if (i) out += ", ";
      print_expr(out, s.group_by[i]);
    }
  }
  if (s.having) {
    out += " HAVING ";
    print_expr(out, *s.having);
  }
  if (!s.order_by.empty()) {
    out += " ORDER BY ";
    for (std::size_t i = 0; i < s.order_by.size(); ++i) {
      if (i) out += ", ";
      print_expr(out, s.order_by[i].expr);
      if (s.order_by[i].descending) out += " DESC";
    }
  }
}

// ---------------------------------------------------------------- analysis

// Alias -> table maps of the enclosing SELECTs, innermost last.
class Scopes {
 public:
  void push(const std::vector<TableRef>& from) {
    std::map<std::string, std::string> m;
    for (const auto& t : from) {
      m[t.name] = t.name;
      if (!t.alias.empty()) m[t.alias] = t.name;
    }
    stack_.push_back(std::move(m));
  }
  void pop() { stack_.pop_back(); }

  ColumnName name_of(const Expr& column) const {
    if (column.qualifier.empty()) return {"", column.text};
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
      if (auto f = it->find(column.qualifier); f != it->end()) return {f->second, column.text};
    }
    return {column.qualifier, column.text};
  }

 private:
  std::vector<std::map<std::string, std::string>> stack_;
};

template <typename OnColumn, typename OnSubquery>
void visit(const Expr& e, OnColumn&& on_column, OnSubquery&& on_subquery) {
  if (e.kind == ExprKind::kColumn) on_column(e);
  for (const auto& a : e.args) visit(a, on_column, on_subquery);
  if (e.subquery) on_subquery(*e.subquery);
}

class AttributeCollector {
 public:
  std::set<ColumnName> run(const Statement& stmt) {
    if (const auto* s = std::get_if<SelectStmt>(&stmt)) {
      select(*s);
    } else {
      const auto& u = std::get<UpdateStmt>(stmt);
      scopes_.push({u.table});
      if (u.where) collect(*u.where);
      for (const auto& a : u.set) subqueries_only(a.value);
      scopes_.pop();
    }
    return std::move(out_);
  }

 private:
  void select(const SelectStmt& s) {
    scopes_.push(s.from);
    for (const auto& item : s.select_list) subqueries_only(item.expr);
    if (s.where) collect(*s.where);
    for (const auto& g : s.group_by) collect_clause(g, s);
    if (s.having) collect_clause(*s.having, s);
    for (const auto& o : s.order_by) collect_clause(o.expr, s);
    scopes_.pop();
  }

  void collect(const Expr& e) {
    visit(
        e, [&](const Expr& c) { out_.insert(scopes_.name_of(c)); },
        [&](const SelectStmt& sub) { select(sub); });
  }

  // GROUP BY / HAVING / ORDER BY may name a select-list alias; the aliased
  // expression's columns stand in for it.
  void collect_clause(const Expr& e, const SelectStmt& s) {
    visit(
        e,
        [&](const Expr& c) {
          if (c.qualifier.empty()) {
            for (const auto& item : s.select_list) {
              if (!item.alias.empty() && item.alias == c.text) {
                collect(item.expr);
                return;
              }
            }
          }
          out_.insert(scopes_.name_of(c));
        },
        [&](const SelectStmt& sub) { select(sub); });
  }

  void subqueries_only(const Expr& e) {
    visit(e, [](const Expr&) {}, [&](const SelectStmt& sub) { select(sub); });
  }

  Scopes scopes_;
  std::set<ColumnName> out_;
};

bool is_constant(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kNumber:
    case ExprKind::kString:
    case ExprKind::kNull:
      return true;
    case ExprKind::kNegate:
    case ExprKind::kArith:
      for (const auto& a : e.args) {
        if (!is_constant(a)) return false;
      }
      return true;
    case ExprKind::kSubquery:
      return true;  // evaluated once per probe
    default:
      return false;
  }
}

class PredicateCollector {
 public:
  std::vector<Predicate> run(const Statement& stmt) {
    if (const auto* s = std::get_if<SelectStmt>(&stmt)) {
      select(*s);
    } else {
      const auto& u = std::get<UpdateStmt>(stmt);
      scopes_.push({u.table});
      if (u.where) where(*u.where);
      scopes_.pop();
    }
    return std::move(out_);
  }

 private:
  void select(const SelectStmt& s) {
    scopes_.push(s.from);
    for (const auto& item : s.select_list) subqueries(item.expr);
    if (s.where) where(*s.where);
    if (s.having) subqueries(*s.having);
    scopes_.pop();
  }

  void subqueries(const Expr& e) {
    visit(e, [](const Expr&) {}, [&](const SelectStmt& sub) { select(sub); });
  }

  void add(const Expr& column, PredicateKind kind) {
    out_.push_back({scopes_.name_of(column), kind});
  }

  void where(const Expr& e) {
    switch (e.kind) {
      case ExprKind::kAnd:
      case ExprKind::kOr:
        where(e.args[0]);
        where(e.args[1]);
        return;
      case ExprKind::kCompare: {
        const auto& l = e.args[0];
        const auto& r = e.args[1];
        if (e.text != "<>") {
          const auto kind = e.text == "=" ? PredicateKind::kEquality : PredicateKind::kRange;
          if (l.kind == ExprKind::kColumn && (is_constant(r) || r.kind == ExprKind::kColumn)) {
            add(l, kind);
          }
          if (r.kind == ExprKind::kColumn && (is_constant(l) || l.kind == ExprKind::kColumn)) {
            add(r, kind);
          }
        }
        break;
      }
      case ExprKind::kBetween:
      case ExprKind::kLike:
      case ExprKind::kInList:
      case ExprKind::kInSubquery:
        if (!e.negated && e.args[0].kind == ExprKind::kColumn) {
          add(e.args[0], PredicateKind::kRange);
        }
        break;
      default:
        break;
    }
    subqueries(e);
  }

  Scopes scopes_;
  std::vector<Predicate> out_;
};

void tables_of(const SelectStmt& s, std::set<std::string>& out) {
  for (const auto& t : s.from) out.insert(t.name);
  auto on_sub = [&](const SelectStmt& sub) { tables_of(sub, out); };
  auto none = [](const Expr&) {};
  for (const auto& item : s.select_list) visit(item.expr, none, on_sub);
  if (s.where) visit(*s.where, none, on_sub);
  for (const auto& g : s.group_by) visit(g, none, on_sub);
  if (s.having) visit(*s.having, none, on_sub);
  for (const auto& o : s.order_by) visit(o.expr, none, on_sub);
}

}  // namespace

std::string to_sql(const Statement& stmt) {
  std::string out;
  if (const auto* s = std::get_if<SelectStmt>(&stmt)) {
    print_select(out, *s);
    return out;
  }
  const auto& u = std::get<UpdateStmt>(stmt);
  out += "UPDATE ";
  print_table(out, u.table);
  out += " SET ";
  for (std::size_t i = 0; i < u.set.size(); ++i) {
    if (i) out += ", ";
    print_expr(out, u.set[i].column);
    out += " = ";
    print_expr(out, u.set[i].value);
  }
  if (u.where) {
    out += " WHERE ";
    print_expr(out, *u.where);
  }
  return out;
}

std::set<ColumnName> extract_indexable_attributes(const Statement& stmt) {
  return AttributeCollector().run(stmt);
}

std::vector<Predicate> extract_predicates(const Statement& stmt) {
  return PredicateCollector().run(stmt);
}

std::set<std::string> referenced_tables(const Statement& stmt) {
  std::set<std::string> out;
  if (const auto* s = std::get_if<SelectStmt>(&stmt)) {
    tables_of(*s, out);
  } else {
    const auto& u = std::get<UpdateStmt>(stmt);
    out.insert(u.table.name);
    auto on_sub = [&](const SelectStmt& sub) { tables_of(sub, out); };
    auto none = [](const Expr&) {};
    if (u.where) visit(*u.where, none, on_sub);
    for (const auto& a : u.set) visit(a.value, none, on_sub);
  }
  return out;
}

}  // namespace idxminer::sql

#include <algorithm>
#include <random>

#include "doctest.h"
#include "idxminer/error.hpp"
#include "idxminer/sql.hpp"

using namespace idxminer::sql;
using idxminer::SyntaxError;
using idxminer::UnsupportedError;

namespace {

std::set<ColumnName> cols(std::initializer_list<std::pair<const char*, const char*>> l) {
  std::set<ColumnName> out;
  for (auto [q, c] : l) out.insert({q, c});
  return out;
}

std::set<ColumnName> extract(std::string_view sql) {
  return extract_indexable_attributes(parse_query(sql));
}

}  // namespace

TEST_CASE("BETWEEN and an equality join predicate") {
  const auto stmt = parse_query("SELECT * FROM T1, T2 WHERE A BETWEEN 1 AND 10 AND C=D");
  REQUIRE(std::holds_alternative<SelectStmt>(stmt));
  const auto& s = std::get<SelectStmt>(stmt);
  REQUIRE(s.from.size() == 2);
  CHECK(s.from[0].name == "t1");
  REQUIRE(s.where);
  const auto& w = *s.where;
  REQUIRE(w.kind == ExprKind::kAnd);
  CHECK(w.args[0].kind == ExprKind::kBetween);
  CHECK(w.args[0].args[0].text == "a");
  const auto& join = w.args[1];
  CHECK(join.kind == ExprKind::kCompare);
  CHECK(join.text == "=");
  CHECK(join.args[0].kind == ExprKind::kColumn);
  CHECK(join.args[1].kind == ExprKind::kColumn);
}

TEST_CASE("minimal UPDATE exposes SET and WHERE") {
  const auto stmt = parse_query("UPDATE T1 SET A=0 WHERE B>2");
  REQUIRE(std::holds_alternative<UpdateStmt>(stmt));
  const auto& u = std::get<UpdateStmt>(stmt);
  CHECK(u.table.name == "t1");
  REQUIRE(u.set.size() == 1);
  CHECK(u.set[0].column.text == "a");
  CHECK(u.set[0].value.text == "0");
  REQUIRE(u.where);
  CHECK(u.where->kind == ExprKind::kCompare);
  CHECK(u.where->text == ">");
  CHECK(kind_of(stmt) == StatementKind::kUpdate);
}

TEST_CASE("IN subquery nests one SELECT under WHERE") {
  const auto stmt = parse_query("SELECT * FROM T1 WHERE E IN (SELECT E FROM T2 WHERE C=5)");
  const auto& s = std::get<SelectStmt>(stmt);
  REQUIRE(s.where);
  REQUIRE(s.where->kind == ExprKind::kInSubquery);
  REQUIRE(s.where->subquery);
  const auto& sub = *s.where->subquery;
  CHECK(sub.from.at(0).name == "t2");
  REQUIRE(sub.where);
  CHECK(sub.where->kind == ExprKind::kCompare);
  CHECK(sub.where->args[0].text == "c");
  CHECK_FALSE(sub.where->subquery);
}

TEST_CASE("indexable attributes come from WHERE, GROUP BY, HAVING and ORDER BY") {
  CHECK(extract("SELECT * FROM T1, T2 WHERE A=30 AND B>3 GROUP BY C HAVING SUM(E)>2") ==
        cols({{"", "a"}, {"", "b"}, {"", "c"}, {"", "e"}}));
  CHECK(extract("SELECT * FROM T1 WHERE B>2 AND E IN (3, 2, 5)") == cols({{"", "b"}, {"", "e"}}));
  CHECK(extract("SELECT A FROM T1").empty());
  CHECK(extract("SELECT a FROM t1 ORDER BY b DESC, a") == cols({{"", "a"}, {"", "b"}}));
}

TEST_CASE("select-list and SET-list columns are never indexable") {
  CHECK(extract("SELECT A, SUM(B) FROM T1 WHERE C = 1") == cols({{"", "c"}}));
  CHECK(extract("UPDATE T1 SET A = B + 1 WHERE C = 2") == cols({{"", "c"}}));
  // A subquery's own WHERE still counts, even when it sits in the select list.
  CHECK(extract("SELECT (SELECT MAX(x) FROM t2 WHERE y = 1) FROM t1") == cols({{"", "y"}}));
  CHECK(extract("UPDATE t1 SET a = (SELECT MIN(z) FROM t2 WHERE w > 3)") == cols({{"", "w"}}));
}

TEST_CASE("subquery columns are collected at every level") {
  CHECK(extract("SELECT * FROM T1 WHERE E IN (SELECT E FROM T2 WHERE C=5)") ==
        cols({{"", "c"}, {"", "e"}}));
  CHECK(extract("SELECT * FROM t1 WHERE EXISTS (SELECT * FROM t2 WHERE t2.c = t1.a)") ==
        cols({{"t1", "a"}, {"t2", "c"}}));
  CHECK(extract("SELECT * FROM t1 WHERE NOT EXISTS (SELECT * FROM t2 WHERE d < 3)") ==
        cols({{"", "d"}}));
}

TEST_CASE("aliases map to table names, including correlated references") {
  const auto got = extract(
      "SELECT SUM(l.price) FROM lineitem l, part AS p WHERE p.partkey = l.partkey AND "
      "l.qty < (SELECT 0.2 * AVG(l2.qty) FROM lineitem l2 WHERE l2.partkey = p.partkey)");
  CHECK(got == cols({{"lineitem", "partkey"}, {"lineitem", "qty"}, {"part", "partkey"}}));
}

TEST_CASE("ORDER BY a select alias contributes the aliased expression's columns") {
  CHECK(extract("SELECT SUM(price * qty) AS revenue FROM t WHERE k = 1 ORDER BY revenue DESC") ==
        cols({{"", "k"}, {"", "price"}, {"", "qty"}}));
}

TEST_CASE("identifiers are case-insensitive and literals are excluded") {
  CHECK(extract("select * from T1 where A = 'A' and b like 'B%'") ==
        cols({{"", "a"}, {"", "b"}}));
  CHECK(extract("SELECT * FROM t WHERE 1 = 1").empty());
}

TEST_CASE("syntax errors report position and token") {
  try {
    parse_query("SELECT * FROM T1 WHERE A = = 3");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.position() == 27);
    CHECK(e.token() == "=");
  }
  CHECK_THROWS_AS(parse_query("SELECT * T1"), SyntaxError);
  CHECK_THROWS_AS(parse_query("SELECT * FROM T1 WHERE"), SyntaxError);
  CHECK_THROWS_AS(parse_query("SELECT * FROM T1 WHERE A = 'open"), SyntaxError);
  CHECK_THROWS_AS(parse_query("SELECT * FROM T1; SELECT 1 FROM T2"), SyntaxError);
  CHECK_THROWS_AS(parse_query("SELECT * FROM T1 WHERE A ^ 2"), SyntaxError);
}

TEST_CASE("constructs outside the dialect are named") {
  try {
    parse_query("DELETE FROM t1 WHERE a = 1");
    FAIL("expected UnsupportedError");
  } catch (const UnsupportedError& e) {
    CHECK(e.construct() == "DELETE statement");
  }
  CHECK_THROWS_AS(parse_query("INSERT INTO t1 VALUES (1)"), UnsupportedError);
  CHECK_THROWS_AS(parse_query("SELECT * FROM t1 JOIN t2 ON a = c"), UnsupportedError);
  CHECK_THROWS_AS(parse_query("SELECT * FROM (SELECT * FROM t1) x"), UnsupportedError);
  CHECK_THROWS_AS(parse_query("SELECT * FROM t1 UNION SELECT * FROM t2"), UnsupportedError);
}

TEST_CASE("sargable predicates feed the cost model") {
  const auto preds = extract_predicates(parse_query(
      "SELECT * FROM t WHERE a = 1 AND b > 2 AND c BETWEEN 1 AND 3 AND d <> 4 AND "
      "e NOT IN (1, 2) AND f = g GROUP BY h HAVING SUM(i) > 3"));
  std::set<Predicate> got(preds.begin(), preds.end());
  const std::set<Predicate> want = {{{"", "a"}, PredicateKind::kEquality},
                                    {{"", "b"}, PredicateKind::kRange},
                                    {{"", "c"}, PredicateKind::kRange},
                                    {{"", "f"}, PredicateKind::kEquality},
                                    {{"", "g"}, PredicateKind::kEquality}};
  CHECK(got == want);
  CHECK(referenced_tables(parse_query("SELECT * FROM a, b WHERE x IN (SELECT y FROM c)")) ==
        std::set<std::string>{"a", "b", "c"});
}

// ---------------------------------------------------------------- properties

namespace {

struct QueryGen {
  std::mt19937_64& rng;

  std::string column() {
    static const char* names[] = {"a", "b", "c", "d", "e", "t1.a", "t2.c", "x.b"};
    return names[pick(8)];
  }
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

  std::string predicate(int depth) {
    switch (pick(depth > 0 ? 9 : 8)) {
      case 0: return column() + " = " + std::to_string(pick(100));
      case 1: return column() + " < " + std::to_string(pick(100));
      case 2: return column() + " BETWEEN 1 AND " + std::to_string(pick(9) + 2);
      case 3: return column() + " LIKE 'x%'";
      case 4: return column() + " IN (1, 2, 3)";
      case 5: return column() + " = " + column();
      case 6: return "(" + column() + " >= 3 OR " + column() + " <> 4)";
      case 7: return column() + " IS NOT NULL";
      default:
        return column() + " IN (SELECT " + column() + " FROM t2 WHERE " + predicate(depth - 1) + ")";
    }
  }

  std::vector<std::string> conjuncts() {
    std::vector<std::string> out(pick(5) + 1);
    for (auto& c : out) c = predicate(1);
    return out;
  }

  static std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " AND " : "") + parts[i];
    return out;
  }

  std::string tail() {
    std::string t;
    if (pick(2)) t += " GROUP BY " + column();
    if (pick(2)) t += " HAVING SUM(" + column() + ") > 2";
    if (pick(2)) t += " ORDER BY " + column();
    return t;
  }
};

}  // namespace

TEST_CASE("property: extraction ignores the order of AND operands") {
  std::mt19937_64 rng(7);
  QueryGen gen{rng};
  for (int trial = 0; trial < 300; ++trial) {
    auto parts = gen.conjuncts();
    const auto tail = gen.tail();
    const auto select_col = gen.column();
    const auto base = "SELECT " + select_col + " FROM t1, t2 x WHERE " + QueryGen::join(parts) + tail;
    std::shuffle(parts.begin(), parts.end(), rng);
    const auto shuffled = "SELECT " + select_col + " FROM t1, t2 x WHERE " + QueryGen::join(parts) + tail;
    INFO(base);
    CHECK(extract(base) == extract(shuffled));
  }
}

TEST_CASE("property: serialize then re-parse keeps the extracted attributes") {
  std::mt19937_64 rng(11);
  QueryGen gen{rng};
  for (int trial = 0; trial < 300; ++trial) {
    const bool update = gen.pick(4) == 0;
    const auto sql = update ? "UPDATE t1 SET a = " + gen.column() + " + 1 WHERE " +
                                  QueryGen::join(gen.conjuncts())
                            : "SELECT " + gen.column() + " FROM t1, t2 x WHERE " +
                                  QueryGen::join(gen.conjuncts()) + gen.tail();
    INFO(sql);
    const auto stmt = parse_query(sql);
    const auto printed = to_sql(stmt);
    const auto reparsed = parse_query(printed);
    CHECK(extract_indexable_attributes(stmt) == extract_indexable_attributes(reparsed));
    CHECK(to_sql(reparsed) == printed);
  }
}

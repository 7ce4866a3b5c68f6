#include <fstream>

#include "doctest.h"
#include "idxminer/error.hpp"
#include "idxminer/workload.hpp"
#include "test_support.hpp"

using namespace idxminer;
using idxminer::testing::fig2_catalog;

namespace {

std::set<AttributeRef> attrs(std::initializer_list<std::pair<const char*, const char*>> l) {
  std::set<AttributeRef> out;
  for (auto [t, c] : l) out.insert({t, c});
  return out;
}

}  // namespace

TEST_CASE("resolve_attribute: unique owner, qualified lookup, unknown column") {
  const auto cat = fig2_catalog();
  CHECK(cat.resolve("C") == AttributeRef{"t2", "c"});
  CHECK(cat.resolve("A", "T1") == AttributeRef{"t1", "a"});
  CHECK_THROWS_AS(cat.resolve("X"), ResolveError);
  CHECK_THROWS_AS(cat.resolve("C", "T1"), ResolveError);
  try {
    cat.resolve("a", "t9");
    FAIL("expected ResolveError");
  } catch (const ResolveError& e) {
    CHECK(e.reason() == ResolveError::Reason::kUnknownTable);
  }
}

TEST_CASE("ambiguous unqualified columns are a hard error") {
  const Catalog cat({{"t1", 10, false, {{"k", 5}}}, {"t2", 10, false, {{"k", 5}}}});
  try {
    cat.resolve("k");
    FAIL("expected ResolveError");
  } catch (const ResolveError& e) {
    CHECK(e.reason() == ResolveError::Reason::kAmbiguousColumn);
  }
  CHECK(cat.resolve("k", "t2") == AttributeRef{"t2", "k"});
  CHECK_THROWS_WITH_AS(parse_workload("SELECT * FROM t1 WHERE k = 1;", cat),
                       doctest::Contains("Q1"), ResolveError);
}

TEST_CASE("catalog validation") {
  using J = nlohmann::json;
  CHECK_THROWS_AS(Catalog::from_json(J::object()), FormatError);
  CHECK_THROWS_AS(Catalog::from_json(J::parse(R"([{"name":"t","row_count":-1,"columns":[]}])")),
                  FormatError);
  CHECK_THROWS_AS(Catalog::from_json(J::parse(
                      R"([{"name":"t","row_count":5,"columns":[{"name":"a","cardinality":9}]}])")),
                  FormatError);
  CHECK_THROWS_AS(Catalog::from_json(J::parse(
                      R"([{"name":"t","row_count":5,"columns":[{"name":"a","cardinality":0}]}])")),
                  FormatError);
  CHECK_THROWS_AS(Catalog::from_json(J::parse(
                      R"([{"name":"t","row_count":5,"columns":[]},{"name":"T","row_count":1,"columns":[]}])")),
                  FormatError);
  const auto ok = Catalog::from_json(
      J::parse(R"([{"name":"T","row_count":0,"columns":[{"name":"A","cardinality":3}]}])"));
  CHECK_FALSE(ok.tables()[0].is_large);
  CHECK(ok.tables()[0].name == "t");
}

TEST_CASE("Fig. 2 workload yields the Fig. 3 attribute rows") {
  const auto w = load_workload(testing::data_path("fig2_workload.sql"), fig2_catalog());
  REQUIRE(w.queries.size() == 6);
  const std::vector<std::set<AttributeRef>> want = {
      attrs({{"t1", "a"}, {"t2", "c"}, {"t2", "d"}}),
      attrs({{"t1", "b"}, {"t2", "c"}, {"t2", "e"}}),
      attrs({{"t1", "a"}, {"t1", "b"}, {"t2", "c"}, {"t2", "e"}}),
      attrs({{"t1", "b"}, {"t2", "e"}}),
      attrs({{"t1", "a"}, {"t1", "b"}, {"t2", "c"}, {"t2", "e"}}),
      attrs({{"t1", "b"}, {"t2", "c"}, {"t2", "e"}}),
  };
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(w.queries[i].id == "Q" + std::to_string(i + 1));
    CHECK(w.queries[i].indexable_attrs == want[i]);
    CHECK(w.queries[i].kind == sql::StatementKind::kSelect);
  }
}

TEST_CASE("empty and trivial workloads") {
  const auto cat = fig2_catalog();
  CHECK(parse_workload("", cat).empty());
  CHECK(parse_workload("-- only a comment\n\n  \n", cat).empty());

  const auto w = parse_workload("SELECT * FROM T1 WHERE A=1; SELECT * FROM T1;", cat);
  REQUIRE(w.queries.size() == 2);
  CHECK(w.queries[0].indexable_attrs == attrs({{"t1", "a"}}));
  CHECK(w.queries[1].indexable_attrs.empty());
}

TEST_CASE("statement splitting respects quotes and comments") {
  const auto parts = split_statements(
      "SELECT * FROM t WHERE a = 'x;y'; -- trailing; comment\n"
      "SELECT * FROM t -- inline\n WHERE b = 'it''s'\n");
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == "SELECT * FROM t WHERE a = 'x;y'");
  CHECK(parts[1].find("'it''s'") != std::string::npos);
  CHECK(parts[1].find("inline") == std::string::npos);
}

TEST_CASE("load errors name the query and the offending token") {
  const auto cat = fig2_catalog();
  try {
    parse_workload("SELECT * FROM T1 WHERE A=1;\nSELECT * FROM T1 WHERE A = = 2;", cat);
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("Q2") == 0);
    CHECK(msg.find("'='") != std::string::npos);
  }
  CHECK_THROWS_WITH_AS(parse_workload("SELECT * FROM T1 WHERE Z = 1;", cat),
                       doctest::Contains("Q1: unknown column 'z'"), ResolveError);
  CHECK_THROWS_WITH_AS(parse_workload("SELECT * FROM T9 WHERE A = 1;", cat),
                       doctest::Contains("Q1"), ResolveError);
  CHECK_THROWS_AS(load_workload("/nonexistent/workload.sql", cat), IoError);
}

TEST_CASE("UPDATE: only WHERE columns are indexable; target recorded for maintenance") {
  const auto w = parse_workload("UPDATE T1 SET A=0 WHERE B>2;", fig2_catalog());
  const auto& q = w.queries.at(0);
  CHECK(q.kind == sql::StatementKind::kUpdate);
  CHECK(q.indexable_attrs == attrs({{"t1", "b"}}));
  CHECK(q.update_target == "t1");
  CHECK(q.tables == std::set<std::string>{"t1"});
}

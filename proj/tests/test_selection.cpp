#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include "doctest.h"
#include "idxminer/close_miner.hpp"
#include "idxminer/error.hpp"
#include "idxminer/selection.hpp"
#include "test_support.hpp"

using namespace idxminer;
using testing::fig2_catalog;
using testing::fig3_context;

namespace {

using Shape = std::vector<std::pair<std::string, std::vector<std::string>>>;

Shape shape_of(const std::vector<CandidateIndex>& v) {
  Shape out;
  for (const auto& c : v) out.emplace_back(c.table, c.columns);
  return out;
}

CandidateIndex cand(std::string table, std::vector<std::string> cols, std::size_t support = 1) {
  return CandidateIndex{std::move(table), std::move(cols), {}, support};
}

std::vector<CandidateIndex> fig3_candidates(const char* minsup) {
  const auto closed = mine_close(fig3_context(), MiningParams{Ratio::parse(minsup)});
  return generate_candidates(closed, fig2_catalog());
}

}  // namespace

TEST_CASE("candidates from the worked example") {
  const auto c = fig3_candidates("2/6");
  // T1(B) folds into T1(B,A) and T2(C) into T2(C,E).
  const Shape want = {{"t1", {"a"}}, {"t1", {"b", "a"}}, {"t2", {"c", "e"}}, {"t2", {"e"}}};
  CHECK(shape_of(c) == want);

  const auto& t2ce = c[2];
  CHECK(t2ce.max_support == 5);
  std::set<std::string> sources;
  for (const auto& s : t2ce.source_itemsets) {
    std::string joined;
    for (const auto& a : s) joined += (joined.empty() ? "" : ",") + a.str();
    sources.insert(joined);
  }
  // Its own itemsets plus those of the absorbed T2(C).
  CHECK(sources == std::set<std::string>{"t2.c", "t1.a,t2.c", "t1.b,t2.c,t2.e",
                                         "t1.a,t1.b,t2.c,t2.e"});
}

TEST_CASE("candidate edge cases") {
  ClosedSetCollection empty;
  CHECK(generate_candidates(empty, fig2_catalog()).empty());

  const auto ctx = fig3_context();
  ClosedSetCollection one;
  one.attributes = ctx.attributes();
  one.item_supports = {3, 5, 5, 1, 5};
  one.total_queries = 6;
  one.itemsets.push_back({ctx.make_set(std::vector<std::size_t>{0}), {{"t1", "a"}}, 3, 6});
  const auto c = generate_candidates(one, fig2_catalog());
  REQUIRE(c.size() == 1);
  CHECK(c[0].table == "t1");
  CHECK(c[0].columns == std::vector<std::string>{"a"});
  CHECK(c[0].max_support == 3);
}

TEST_CASE("strategies") {
  const auto catalog = fig2_catalog();
  const auto c = fig3_candidates("2/6");

  const auto naive = apply_strategy(c, catalog, Strategy::kNaive);
  CHECK(naive.indexes == c);

  const auto large = apply_strategy(c, catalog, Strategy::kLargeTables);
  REQUIRE(!large.indexes.empty());
  for (const auto& i : large.indexes) CHECK(i.table == "t2");
  CHECK(large.indexes.size() == 2);

  CHECK_THROWS_AS(apply_strategy(c, catalog, Strategy::kCardinalityBand), ParamError);
  CHECK_THROWS_AS(apply_strategy(c, catalog, Strategy::kCardinalityBand, SelectivityBand{0.6, 0.2}),
                  ParamError);
  CHECK_THROWS_AS(parse_strategy("greedy"), ParamError);
  for (auto s : {Strategy::kNaive, Strategy::kLargeTables, Strategy::kCardinalityBand}) {
    CHECK(parse_strategy(to_string(s)) == s);
  }
}

TEST_CASE("cardinality band") {
  const Catalog catalog({{"t2", 100, true, {{"c", 50}}}});
  const std::vector<CandidateIndex> c = {cand("t2", {"c"})};
  CHECK(apply_strategy(c, catalog, Strategy::kCardinalityBand, SelectivityBand{0.1, 0.9})
            .indexes.size() == 1);
  CHECK(apply_strategy(c, catalog, Strategy::kCardinalityBand, SelectivityBand{0.6, 0.9})
            .indexes.empty());
  // Bounds are inclusive.
  CHECK(apply_strategy(c, catalog, Strategy::kCardinalityBand, SelectivityBand{0.5, 0.5})
            .indexes.size() == 1);

  const Catalog empty_table({{"t2", 0, true, {{"c", 1}}}});
  CHECK(apply_strategy(c, empty_table, Strategy::kCardinalityBand, SelectivityBand{0.0, 1.0})
            .indexes.empty());
}

TEST_CASE("ddl text") {
  IndexConfiguration config;
  CHECK(emit_ddl(config).empty());

  config.indexes = {cand("t2", {"c", "e"})};
  CHECK(emit_ddl(config) == "CREATE INDEX ix_t2_c_e ON t2 (c, e);\n");

  config.indexes = {cand("t2", {"c"}), cand("t1", {"b", "a"})};
  CHECK(emit_ddl(config) ==
        "CREATE INDEX ix_t1_b_a ON t1 (b, a);\n"
        "CREATE INDEX ix_t2_c ON t2 (c);\n");
}

TEST_CASE("long index names are truncated with a hash suffix") {
  const std::vector<std::string> cols = {"a_rather_long_column_name", "another_long_column_name",
                                         "third_column"};
  const auto name = index_name("lineitem", cols);
  CHECK(name.size() == 60);
  CHECK(name.substr(0, 12) == "ix_lineitem_");
  CHECK(name[55] == '_');
  CHECK(name.substr(56).find_first_not_of("0123456789abcdef") == std::string::npos);
  CHECK(index_name("lineitem", cols) == name);

  auto other = cols;
  other.back() = "third_column_b";
  const auto name2 = index_name("lineitem", other);
  CHECK(name2.substr(0, 55) == name.substr(0, 55));
  CHECK(name2 != name);

  CHECK(index_name("t", {"a"}) == "ix_t_a");
  const std::string exact = "ix_t_" + std::string(55, 'x');
  CHECK(index_name("t", {std::string(55, 'x')}) == exact);
}

TEST_CASE("parse_ddl rejects foreign statements") {
  CHECK(parse_ddl("").empty());
  CHECK_THROWS_AS(parse_ddl("DROP INDEX ix_t_a;\n"), FormatError);
}

TEST_CASE("property: ddl round trip, containment, column provenance") {
  std::mt19937_64 rng(0x5e1ec7);
  std::uniform_int_distribution<int> pick(1, 6);
  for (int trial = 0; trial < 150; ++trial) {
    const auto ctx = testing::random_small_context(rng, 10, 16);
    const auto catalog = testing::catalog_for(rng, ctx);
    const Ratio minsup{static_cast<std::uint64_t>(pick(rng)), 8};
    const auto closed = mine_close(ctx, MiningParams{minsup});
    const auto candidates = generate_candidates(closed, catalog);

    const auto naive = apply_strategy(candidates, catalog, Strategy::kNaive);
    const auto large = apply_strategy(candidates, catalog, Strategy::kLargeTables);
    const auto band =
        apply_strategy(candidates, catalog, Strategy::kCardinalityBand, SelectivityBand{0.1, 0.6});
    for (const auto* filtered : {&large, &band}) {
      for (const auto& i : filtered->indexes) {
        CHECK(std::find(naive.indexes.begin(), naive.indexes.end(), i) != naive.indexes.end());
      }
    }

    std::set<AttributeRef> mined;
    for (const auto& f : closed.itemsets) mined.insert(f.attrs.begin(), f.attrs.end());
    for (const auto& i : naive.indexes) {
      for (const auto& col : i.columns) CHECK(mined.count({i.table, col}) == 1);
    }

    std::vector<DdlIndex> want;
    for (const auto& i : naive.indexes) want.push_back({index_name(i.table, i.columns), i.table, i.columns});
    std::sort(want.begin(), want.end(), [](const DdlIndex& a, const DdlIndex& b) {
      return std::tie(a.table, a.name) < std::tie(b.table, b.name);
    });
    CHECK(parse_ddl(emit_ddl(naive)) == want);
  }
}

TEST_CASE("property: candidate count is antitone in minsup") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const auto ctx = testing::random_small_context(rng, 10, 16);
    const auto catalog = testing::catalog_for(rng, ctx);
    std::size_t previous = SIZE_MAX;
    for (std::uint64_t k = 1; k <= 16; ++k) {
      const auto closed = mine_close(ctx, MiningParams{Ratio{k, 16}});
      const auto n = generate_candidates(closed, catalog).size();
      CHECK(n <= previous);
      previous = n;
    }
  }
}

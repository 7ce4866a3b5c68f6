#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "idxminer/catalog.hpp"
#include "idxminer/close_miner.hpp"
#include "idxminer/ratio.hpp"
#include "json.hpp"

namespace idxminer {

enum class Strategy { kNaive, kLargeTables, kCardinalityBand };

std::string_view to_string(Strategy s);       // "naive" | "large-tables" | "cardinality-band"
Strategy parse_strategy(std::string_view name);  // throws ParamError

// Keeps indexes whose leading column has lo <= cardinality / row_count <= hi.
struct SelectivityBand {
  double lo = 0.01;
  double hi = 0.5;

  void validate() const;
};

struct CandidateIndex {
  std::string table;
  std::vector<std::string> columns;
  std::vector<std::vector<AttributeRef>> source_itemsets;  // sorted, distinct
  std::size_t max_support = 0;

  friend bool operator==(const CandidateIndex&, const CandidateIndex&) = default;
};

struct IndexConfiguration {
  std::vector<CandidateIndex> indexes;
  Strategy strategy = Strategy::kNaive;
  std::optional<Ratio> minsup;
  std::optional<SelectivityBand> band;

  std::size_t count_on(std::string_view table) const;
  nlohmann::json to_json() const;
};

// One candidate per (closed itemset, owning table); columns ordered by
// descending single-attribute support, ties by name. Duplicates merge and a
// strict prefix of another candidate on the same table is folded into it.
// Result sorted by (table, columns).
std::vector<CandidateIndex> generate_candidates(const ClosedSetCollection& closed,
                                                const Catalog& catalog);

IndexConfiguration apply_strategy(std::vector<CandidateIndex> candidates, const Catalog& catalog,
                                  Strategy strategy,
                                  std::optional<SelectivityBand> band = std::nullopt);

// "ix_<table>_<col>..." capped at 60 characters (4 hex digit hash suffix).
std::string index_name(std::string_view table, const std::vector<std::string>& columns);

// One CREATE INDEX line per index, sorted by (table, name).
std::string emit_ddl(const IndexConfiguration& config);

struct DdlIndex {
  std::string name;
  std::string table;
  std::vector<std::string> columns;

  friend bool operator==(const DdlIndex&, const DdlIndex&) = default;
};

// Reads back the subset of DDL that emit_ddl produces.
std::vector<DdlIndex> parse_ddl(std::string_view ddl);

}  // namespace idxminer

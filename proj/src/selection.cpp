#include "idxminer/selection.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <set>
#include <tuple>

#include "idxminer/error.hpp"

namespace idxminer {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::kNaive:
      return "naive";
    case Strategy::kLargeTables:
      return "large-tables";
    case Strategy::kCardinalityBand:
      return "cardinality-band";
  }
  return "naive";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "naive") return Strategy::kNaive;
  if (name == "large-tables") return Strategy::kLargeTables;
  if (name == "cardinality-band") return Strategy::kCardinalityBand;
  throw ParamError("unknown strategy '" + std::string(name) +
                   "' (expected naive, large-tables or cardinality-band)");
}

void SelectivityBand::validate() const {
  if (!(lo >= 0.0 && hi <= 1.0 && lo <= hi)) {
    throw ParamError("selectivity band (" + std::to_string(lo) + ", " + std::to_string(hi) +
                     ") must satisfy 0 <= lo <= hi <= 1");
  }
}

std::size_t IndexConfiguration::count_on(std::string_view table) const {
  return static_cast<std::size_t>(std::count_if(
      indexes.begin(), indexes.end(), [&](const CandidateIndex& c) { return c.table == table; }));
}

nlohmann::json IndexConfiguration::to_json() const {
  nlohmann::json j;
  j["strategy"] = std::string(to_string(strategy));
  j["minsup"] = minsup ? nlohmann::json(minsup->str()) : nlohmann::json(nullptr);
  j["band"] = band ? nlohmann::json::array({band->lo, band->hi}) : nlohmann::json(nullptr);
  auto arr = nlohmann::json::array();
  for (const auto& c : indexes) {
    auto sources = nlohmann::json::array();
    for (const auto& s : c.source_itemsets) {
      auto names = nlohmann::json::array();
      for (const auto& a : s) names.push_back(a.str());
      sources.push_back(names);
    }
    arr.push_back({{"name", index_name(c.table, c.columns)},
                   {"table", c.table},
                   {"columns", c.columns},
                   {"source_itemsets", sources},
                   {"max_support", c.max_support}});
  }
  j["indexes"] = arr;
  return j;
}

namespace {

bool is_strict_prefix(const std::vector<std::string>& shorter,
                      const std::vector<std::string>& longer) {
  return shorter.size() < longer.size() &&
         std::equal(shorter.begin(), shorter.end(), longer.begin());
}

void absorb(CandidateIndex& into, const CandidateIndex& from) {
  into.source_itemsets.insert(into.source_itemsets.end(), from.source_itemsets.begin(),
                              from.source_itemsets.end());
  std::sort(into.source_itemsets.begin(), into.source_itemsets.end());
  into.source_itemsets.erase(std::unique(into.source_itemsets.begin(), into.source_itemsets.end()),
                             into.source_itemsets.end());
  into.max_support = std::max(into.max_support, from.max_support);
}

}  // namespace

std::vector<CandidateIndex> generate_candidates(const ClosedSetCollection& closed,
                                                const Catalog& catalog) {
  std::map<AttributeRef, std::size_t> support_of;
  for (std::size_t i = 0; i < closed.attributes.size(); ++i) {
    support_of[closed.attributes[i]] =
        i < closed.item_supports.size() ? closed.item_supports[i] : 0;
  }

  std::map<std::pair<std::string, std::vector<std::string>>, CandidateIndex> merged;
  for (const auto& fci : closed.itemsets) {
    std::map<std::string, std::vector<AttributeRef>> by_table;
    for (const auto& a : fci.attrs) {
      const auto resolved = catalog.resolve(a.column, a.table);
      by_table[resolved.table].push_back(resolved);
    }
    for (auto& [table, attrs] : by_table) {
      std::sort(attrs.begin(), attrs.end(), [&](const AttributeRef& x, const AttributeRef& y) {
        const auto sx = support_of[x];
        const auto sy = support_of[y];
        if (sx != sy) return sx > sy;
        return x.column < y.column;
      });
      std::vector<std::string> cols;
      for (const auto& a : attrs) cols.push_back(a.column);
      CandidateIndex c{table, cols, {fci.attrs}, fci.support_count};
      auto [it, inserted] = merged.try_emplace({table, cols}, c);
      if (!inserted) absorb(it->second, c);
    }
  }

  std::vector<CandidateIndex> all;
  for (auto& [key, c] : merged) all.push_back(std::move(c));

  // Shortest first so a chain A < AB < ABC funnels everything into ABC.
  std::vector<std::size_t> order(all.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return all[a].columns.size() < all[b].columns.size();
  });
  std::vector<bool> dropped(all.size(), false);
  for (auto i : order) {
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (j != i && all[j].table == all[i].table && is_strict_prefix(all[i].columns, all[j].columns)) {
        absorb(all[j], all[i]);
        dropped[i] = true;
      }
    }
  }
  std::vector<CandidateIndex> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!dropped[i]) out.push_back(std::move(all[i]));
  }
  return out;  // map order: (table, columns)
}

IndexConfiguration apply_strategy(std::vector<CandidateIndex> candidates, const Catalog& catalog,
                                  Strategy strategy, std::optional<SelectivityBand> band) {
  IndexConfiguration config;
  config.strategy = strategy;
  switch (strategy) {
    case Strategy::kNaive:
      config.indexes = std::move(candidates);
      break;
    case Strategy::kLargeTables:
      for (auto& c : candidates) {
        if (catalog.table(c.table).is_large) config.indexes.push_back(std::move(c));
      }
      break;
    case Strategy::kCardinalityBand: {
      if (!band) throw ParamError("cardinality-band strategy requires band bounds");
      band->validate();
      config.band = band;
      for (auto& c : candidates) {
        const auto& t = catalog.table(c.table);
        if (t.row_count == 0) continue;
        const auto ratio = static_cast<double>(catalog.cardinality({c.table, c.columns.front()})) /
                           static_cast<double>(t.row_count);
        if (band->lo <= ratio && ratio <= band->hi) config.indexes.push_back(std::move(c));
      }
      break;
    }
  }
  return config;
}

std::string index_name(std::string_view table, const std::vector<std::string>& columns) {
  std::string name = "ix_" + std::string(table);
  for (const auto& c : columns) name += "_" + c;
  constexpr std::size_t kMax = 60;
  if (name.size() <= kMax) return name;
  std::uint32_t h = 2166136261U;
  for (unsigned char ch : name) {
    h ^= ch;
    h *= 16777619U;
  }
  char suffix[6];
  std::snprintf(suffix, sizeof suffix, "_%04x", static_cast<unsigned>((h ^ (h >> 16)) & 0xffffU));
  return name.substr(0, kMax - 5) + suffix;
}

std::string emit_ddl(const IndexConfiguration& config) {
  std::vector<std::tuple<std::string, std::string, std::string>> rows;  // table, name, line
  for (const auto& c : config.indexes) {
    const auto name = index_name(c.table, c.columns);
    std::string line = "CREATE INDEX " + name + " ON " + c.table + " (";
    for (std::size_t i = 0; i < c.columns.size(); ++i) {
      if (i) line += ", ";
      line += c.columns[i];
    }
    line += ");\n";
    rows.emplace_back(c.table, name, std::move(line));
  }
  std::sort(rows.begin(), rows.end());
  std::string out;
  for (const auto& r : rows) out += std::get<2>(r);
  return out;
}

std::vector<DdlIndex> parse_ddl(std::string_view ddl) {
  std::vector<DdlIndex> out;
  std::size_t pos = 0;
  while (pos < ddl.size()) {
    auto end = ddl.find('\n', pos);
    if (end == std::string_view::npos) end = ddl.size();
    auto line = ddl.substr(pos, end - pos);
    pos = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    constexpr std::string_view kHead = "CREATE INDEX ";
    const auto on = line.find(" ON ");
    const auto open = line.find(" (");
    const auto close = line.rfind(");");
    if (line.substr(0, kHead.size()) != kHead || on == std::string_view::npos ||
        open == std::string_view::npos || close == std::string_view::npos || open < on ||
        close < open) {
      throw FormatError("not a CREATE INDEX line: '" + std::string(line) + "'");
    }
    DdlIndex idx;
    idx.name = std::string(line.substr(kHead.size(), on - kHead.size()));
    idx.table = std::string(line.substr(on + 4, open - on - 4));
    auto cols = line.substr(open + 2, close - open - 2);
    std::size_t c = 0;
    while (c <= cols.size()) {
      auto comma = cols.find(", ", c);
      idx.columns.emplace_back(cols.substr(c, comma == std::string_view::npos ? cols.npos : comma - c));
      if (comma == std::string_view::npos) break;
      c = comma + 2;
    }
    out.push_back(std::move(idx));
  }
  return out;
}

}  // namespace idxminer

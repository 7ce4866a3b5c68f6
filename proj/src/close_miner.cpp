#include "idxminer/close_miner.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "idxminer/error.hpp"

namespace idxminer {

bool itemset_order(const AttrSet& a, std::size_t support_a, const AttrSet& b,
                   std::size_t support_b) {
  if (support_a != support_b) return support_a > support_b;
  const auto ca = a.count();
  const auto cb = b.count();
  if (ca != cb) return ca < cb;
  return lex_less(a, b);
}

namespace kernels {
namespace {

inline void closure_of(const std::vector<AttrSet>& rows, const AttrSet& gen, AttrSet& closure,
                       std::size_t& support) {
  closure = AttrSet::full(gen.width());
  std::size_t n = 0;
  for (const auto& r : rows) {
    if (gen.is_subset_of(r)) {
      closure &= r;
      ++n;
    }
  }
  support = n;
}

}  // namespace

void closure_pass_serial(const ExtractionContext& context, std::span<const AttrSet> generators,
                         std::span<AttrSet> closures, std::span<std::size_t> supports) {
  const auto& rows = context.rows();
  for (std::size_t g = 0; g < generators.size(); ++g) {
    closure_of(rows, generators[g], closures[g], supports[g]);
  }
}

void closure_pass_parallel(const ExtractionContext& context, std::span<const AttrSet> generators,
                           std::span<AttrSet> closures, std::span<std::size_t> supports) {
  const auto& rows = context.rows();
  const auto n = static_cast<std::ptrdiff_t>(generators.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t g = 0; g < n; ++g) {
    closure_of(rows, generators[g], closures[g], supports[g]);
  }
}

}  // namespace kernels

namespace {

std::vector<AttributeRef> names_of(const ExtractionContext& ctx, const AttrSet& s) {
  std::vector<AttributeRef> out;
  for (auto i : s.indices()) out.push_back(ctx.attributes()[i]);
  return out;
}

std::vector<std::size_t> item_supports(const ExtractionContext& ctx) {
  std::vector<std::size_t> out(ctx.attribute_count(), 0);
  for (const auto& r : ctx.rows()) {
    for (auto i : r.indices()) ++out[i];
  }
  return out;
}

struct Generator {
  AttrSet items;
  std::vector<std::size_t> index_list;
  AttrSet closure;
};

// Joins generators of size k sharing their first k-1 indices and applies the
// subset and closure pruning rules.
std::vector<AttrSet> next_candidates(std::vector<Generator>& gens) {
  std::sort(gens.begin(), gens.end(),
            [](const Generator& a, const Generator& b) { return a.index_list < b.index_list; });
  std::unordered_map<AttrSet, const AttrSet*, AttrSetHash> closure_of;
  for (const auto& g : gens) closure_of.emplace(g.items, &g.closure);

  std::vector<AttrSet> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& a = gens[i].index_list;
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const auto& b = gens[j].index_list;
      if (!std::equal(a.begin(), a.end() - 1, b.begin(), b.end() - 1)) break;
      auto cand = gens[i].items | gens[j].items;
      bool keep = true;
      for (auto drop : cand.indices()) {
        auto sub = cand;
        sub.reset(drop);
        const auto it = closure_of.find(sub);
        if (it == closure_of.end() || cand.is_subset_of(*it->second)) {
          keep = false;
          break;
        }
      }
      if (keep) out.push_back(std::move(cand));
    }
  }
  return out;
}

}  // namespace

ClosedSetCollection mine_close(const ExtractionContext& context, const MiningParams& params,
                               Execution execution) {
  params.minsup.validate_support();
  ClosedSetCollection out;
  out.attributes = context.attributes();
  out.item_supports = item_supports(context);
  out.total_queries = context.total_queries();
  out.context_fingerprint = context.fingerprint();
  out.params = params;
  const auto width = context.attribute_count();
  if (width == 0) {
    out.empty_context = true;
    return out;
  }
  const auto total = context.total_queries();

  std::vector<AttrSet> level;
  for (std::size_t i = 0; i < width; ++i) {
    AttrSet s(width);
    s.set(i);
    level.push_back(std::move(s));
  }

  std::unordered_set<AttrSet, AttrSetHash> emitted;
  std::vector<AttrSet> closures;
  std::vector<std::size_t> supports;
  while (!level.empty()) {
    closures.assign(level.size(), AttrSet());
    supports.assign(level.size(), 0);
    if (execution == Execution::kParallel) {
      kernels::closure_pass_parallel(context, level, closures, supports);
    } else {
      kernels::closure_pass_serial(context, level, closures, supports);
    }

    std::vector<Generator> frequent;
    for (std::size_t g = 0; g < level.size(); ++g) {
      if (!params.minsup.admits(supports[g], total)) continue;
      if (emitted.insert(closures[g]).second) {
        out.itemsets.push_back({closures[g], names_of(context, closures[g]), supports[g], total});
      }
      auto idx = level[g].indices();
      frequent.push_back({std::move(level[g]), std::move(idx), std::move(closures[g])});
    }
    level = next_candidates(frequent);
  }

  std::sort(out.itemsets.begin(), out.itemsets.end(),
            [](const FrequentClosedItemset& a, const FrequentClosedItemset& b) {
              return itemset_order(a.items, a.support_count, b.items, b.support_count);
            });
  return out;
}

nlohmann::json ClosedSetCollection::to_json() const {
  auto out = nlohmann::json::array();
  for (const auto& fci : itemsets) {
    auto attrs = nlohmann::json::array();
    for (const auto& a : fci.attrs) attrs.push_back(a.str());
    out.push_back({{"attrs", attrs}, {"support", fci.support_str()}});
  }
  return out;
}

std::vector<FrequentItemset> mine_apriori_oracle(const ExtractionContext& context,
                                                 const MiningParams& params) {
  params.minsup.validate_support();
  const auto width = context.attribute_count();
  if (width > kOracleMaxAttributes) {
    throw ParamError("apriori oracle limited to " + std::to_string(kOracleMaxAttributes) +
                     " attributes, context has " + std::to_string(width));
  }
  const auto total = context.total_queries();
  std::vector<FrequentItemset> out;

  // Level k: sorted index lists of frequent k-itemsets.
  std::vector<std::vector<std::size_t>> frequent;
  for (std::size_t i = 0; i < width; ++i) {
    const std::vector<std::size_t> item{i};
    const auto s = context.support_count(item);
    if (params.minsup.admits(s, total)) {
      frequent.push_back(item);
      out.push_back({context.make_set(item), s});
    }
  }
  while (!frequent.empty()) {
    std::set<std::vector<std::size_t>> known(frequent.begin(), frequent.end());
    std::vector<std::vector<std::size_t>> next;
    for (std::size_t i = 0; i < frequent.size(); ++i) {
      for (std::size_t j = i + 1; j < frequent.size(); ++j) {
        const auto& a = frequent[i];
        const auto& b = frequent[j];
        if (!std::equal(a.begin(), a.end() - 1, b.begin(), b.end() - 1)) break;
        auto cand = a;
        cand.push_back(b.back());
        bool all_subsets = true;
        for (std::size_t drop = 0; drop < cand.size() && all_subsets; ++drop) {
          auto sub = cand;
          sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
          all_subsets = known.count(sub) > 0;
        }
        if (!all_subsets) continue;
        const auto s = context.support_count(cand);
        if (params.minsup.admits(s, total)) {
          out.push_back({context.make_set(cand), s});
          next.push_back(std::move(cand));
        }
      }
    }
    frequent = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](const FrequentItemset& a, const FrequentItemset& b) {
    return itemset_order(a.items, a.support_count, b.items, b.support_count);
  });
  return out;
}

std::vector<FrequentItemset> derive_frequent_from_closed(const ClosedSetCollection& closed) {
  std::unordered_map<AttrSet, std::size_t, AttrSetHash> best;
  const auto width = closed.attributes.size();
  for (const auto& fci : closed.itemsets) {
    const auto idx = fci.items.indices();
    const std::uint64_t n = idx.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      AttrSet sub(width);
      for (std::size_t b = 0; b < n; ++b) {
        if (mask >> b & 1U) sub.set(idx[b]);
      }
      auto& s = best[sub];
      s = std::max(s, fci.support_count);
    }
  }
  std::vector<FrequentItemset> out;
  out.reserve(best.size());
  for (auto& [items, support] : best) out.push_back({items, support});
  std::sort(out.begin(), out.end(), [](const FrequentItemset& a, const FrequentItemset& b) {
    return itemset_order(a.items, a.support_count, b.items, b.support_count);
  });
  return out;
}

}  // namespace idxminer

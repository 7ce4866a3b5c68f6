#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "idxminer/attr_set.hpp"
#include "idxminer/context.hpp"
#include "idxminer/ratio.hpp"
#include "json.hpp"

namespace idxminer {

struct MiningParams {
  Ratio minsup{1, 1};
};

struct FrequentClosedItemset {
  AttrSet items;
  std::vector<AttributeRef> attrs;  // names of `items`, axis order
  std::size_t support_count = 0;
  std::size_t support_total = 0;

  std::string support_str() const {
    return std::to_string(support_count) + "/" + std::to_string(support_total);
  }
};

struct ClosedSetCollection {
  std::vector<AttributeRef> attributes;   // attribute axis of the source context
  std::vector<std::size_t> item_supports;  // single-attribute support counts
  std::size_t total_queries = 0;
  std::vector<FrequentClosedItemset> itemsets;
  std::uint64_t context_fingerprint = 0;
  MiningParams params;
  bool empty_context = false;  // mined a context with no attributes

  // [{"attrs": ["t1.a", ...], "support": "3/6"}, ...]
  nlohmann::json to_json() const;
};

struct FrequentItemset {
  AttrSet items;
  std::size_t support_count = 0;

  friend bool operator==(const FrequentItemset&, const FrequentItemset&) = default;
};

enum class Execution { kSerial, kParallel };

// Close: level-wise over generators. Each level computes all generator
// closures and supports in one context pass, keeps the frequent ones, emits
// unseen closures, then joins generators sharing a (k-1)-prefix. A joined
// candidate is dropped if any k-subset is not a frequent generator or lies
// inside the closure of such a subset (equal support).
ClosedSetCollection mine_close(const ExtractionContext& context, const MiningParams& params,
                               Execution execution = Execution::kSerial);

// Textbook Apriori over all frequent itemsets. Verification only; refuses
// contexts wider than kOracleMaxAttributes.
inline constexpr std::size_t kOracleMaxAttributes = 24;
std::vector<FrequentItemset> mine_apriori_oracle(const ExtractionContext& context,
                                                 const MiningParams& params);

// Every subset of a closed itemset, with support taken from its most
// frequent closed superset. Exponential in the largest itemset size.
std::vector<FrequentItemset> derive_frequent_from_closed(const ClosedSetCollection& closed);

// Descending support, ascending size, then lexicographic on attribute index.
bool itemset_order(const AttrSet& a, std::size_t support_a, const AttrSet& b,
                   std::size_t support_b);

namespace kernels {

// Closure and support of each generator; one scan of the context rows per
// generator. The parallel variant splits generators across OpenMP threads.
void closure_pass_serial(const ExtractionContext& context, std::span<const AttrSet> generators,
                         std::span<AttrSet> closures, std::span<std::size_t> supports);
void closure_pass_parallel(const ExtractionContext& context, std::span<const AttrSet> generators,
                           std::span<AttrSet> closures, std::span<std::size_t> supports);

}  // namespace kernels

}  // namespace idxminer

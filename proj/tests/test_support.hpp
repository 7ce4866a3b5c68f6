#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "idxminer/catalog.hpp"
#include "idxminer/close_miner.hpp"
#include "idxminer/context.hpp"

namespace idxminer::testing {

std::filesystem::path data_path(const std::string& name);

Catalog fig2_catalog();

// The six-query sample matrix, typed in from the figure (not parsed).
ExtractionContext fig3_context();

// Bernoulli(density) incidence matrix with the given shape.
ExtractionContext random_context(std::mt19937_64& rng, std::size_t attributes,
                                 std::size_t queries, double density);

// Uniform shape in [1, max_attributes] x [1, max_queries], density in [0.2, 0.8].
ExtractionContext random_small_context(std::mt19937_64& rng, std::size_t max_attributes,
                                       std::size_t max_queries);

// Catalog owning every attribute of `ctx`: table "t0" is large, cardinalities
// uniform in [1, rows].
Catalog catalog_for(std::mt19937_64& rng, const ExtractionContext& ctx, std::uint64_t rows = 1000);

// Exhaustive subset enumeration: every non-empty X with exact support >=
// minsup, and whether X is closed (no single-item extension keeps support).
struct BruteItemset {
  std::vector<std::size_t> items;
  std::size_t support;
  bool closed;
};
std::vector<BruteItemset> brute_force_itemsets(const ExtractionContext& ctx, const Ratio& minsup);

std::vector<std::size_t> indices_of(const ExtractionContext& ctx,
                                    const std::vector<std::string>& names);

std::string names_of(const ExtractionContext& ctx, const AttrSet& s);  // "t1.a,t2.c"

std::string read_file(const std::filesystem::path& p);

// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& tag);

}  // namespace idxminer::testing

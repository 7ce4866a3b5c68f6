#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "idxminer/attr_set.hpp"
#include "idxminer/catalog.hpp"
#include "idxminer/workload.hpp"
#include "json.hpp"

namespace idxminer {

// Binary query x attribute incidence matrix. Immutable once built.
class ExtractionContext {
 public:
  ExtractionContext() = default;
  // Rows must all have width attributes.size(); attributes must be distinct.
  ExtractionContext(std::vector<AttributeRef> attributes, std::vector<std::string> query_ids,
                    std::vector<AttrSet> rows);

  const std::vector<AttributeRef>& attributes() const { return attributes_; }
  const std::vector<std::string>& query_ids() const { return query_ids_; }
  const std::vector<AttrSet>& rows() const { return rows_; }
  std::size_t attribute_count() const { return attributes_.size(); }
  std::size_t total_queries() const { return rows_.size(); }

  AttrSet make_set(std::span<const std::size_t> indices) const;  // range-checked

  std::size_t support_count(const AttrSet& items) const;
  std::size_t support_count(std::span<const std::size_t> indices) const;

  // Intersection of all rows covering `items`; the full attribute set when
  // no row covers it.
  AttrSet closure(const AttrSet& items) const;
  std::vector<std::size_t> closure(std::span<const std::size_t> indices) const;

  // FNV-1a over attribute names and row bits.
  std::uint64_t fingerprint() const;

  // {"attributes": [...], "query_ids": [...], "rows": ["10110", ...]}
  nlohmann::json to_json() const;
  static ExtractionContext from_json(const nlohmann::json& j);
  static ExtractionContext load(const std::filesystem::path& path);

  friend bool operator==(const ExtractionContext&, const ExtractionContext&) = default;

 private:
  std::vector<AttributeRef> attributes_;
  std::vector<std::string> query_ids_;
  std::vector<AttrSet> rows_;
};

// Attribute axis = union of indexable attributes sorted by (table, column).
ExtractionContext build_context(const Workload& workload);

}  // namespace idxminer

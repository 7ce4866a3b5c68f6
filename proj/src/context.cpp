#include "idxminer/context.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "idxminer/error.hpp"

namespace idxminer {

ExtractionContext::ExtractionContext(std::vector<AttributeRef> attributes,
                                     std::vector<std::string> query_ids,
                                     std::vector<AttrSet> rows)
    : attributes_(std::move(attributes)), query_ids_(std::move(query_ids)), rows_(std::move(rows)) {
  if (query_ids_.size() != rows_.size()) {
    throw FormatError("context has " + std::to_string(rows_.size()) + " rows but " +
                      std::to_string(query_ids_.size()) + " query ids");
  }
  if (std::set<AttributeRef>(attributes_.begin(), attributes_.end()).size() != attributes_.size()) {
    throw FormatError("context attribute axis has duplicates");
  }
  for (const auto& r : rows_) {
    if (r.width() != attributes_.size()) throw FormatError("context row width mismatch");
  }
}

AttrSet ExtractionContext::make_set(std::span<const std::size_t> indices) const {
  for (auto i : indices) {
    if (i >= attributes_.size()) {
      throw ParamError("attribute index " + std::to_string(i) + " out of range (" +
                       std::to_string(attributes_.size()) + " attributes)");
    }
  }
  return AttrSet::of(attributes_.size(), indices);
}

std::size_t ExtractionContext::support_count(const AttrSet& items) const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += items.is_subset_of(r) ? 1 : 0;
  return n;
}

std::size_t ExtractionContext::support_count(std::span<const std::size_t> indices) const {
  return support_count(make_set(indices));
}

AttrSet ExtractionContext::closure(const AttrSet& items) const {
  auto out = AttrSet::full(attributes_.size());
  for (const auto& r : rows_) {
    if (items.is_subset_of(r)) out &= r;
  }
  return out;
}

std::vector<std::size_t> ExtractionContext::closure(std::span<const std::size_t> indices) const {
  return closure(make_set(indices)).indices();
}

std::uint64_t ExtractionContext::fingerprint() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= 0xff;
    h *= 1099511628211ULL;
  };
  for (const auto& a : attributes_) mix(a.str());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    mix(query_ids_[i]);
    for (auto w : rows_[i].words()) {
      for (int b = 0; b < 8; ++b) {
        h ^= (w >> (8 * b)) & 0xff;
        h *= 1099511628211ULL;
      }
    }
  }
  return h;
}

nlohmann::json ExtractionContext::to_json() const {
  nlohmann::json j;
  auto attrs = nlohmann::json::array();
  for (const auto& a : attributes_) attrs.push_back(a.str());
  auto rows = nlohmann::json::array();
  for (const auto& r : rows_) {
    std::string bits(attributes_.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (r.test(i)) bits[i] = '1';
    }
    rows.push_back(bits);
  }
  j["attributes"] = attrs;
  j["query_ids"] = query_ids_;
  j["rows"] = rows;
  return j;
}

ExtractionContext ExtractionContext::from_json(const nlohmann::json& j) {
  try {
    std::vector<AttributeRef> attrs;
    for (const auto& a : j.at("attributes")) {
      const auto s = a.get<std::string>();
      const auto dot = s.find('.');
      if (dot == std::string::npos || dot == 0 || dot + 1 == s.size()) {
        throw FormatError("context attribute '" + s + "' is not table.column");
      }
      attrs.push_back({to_lower(s.substr(0, dot)), to_lower(s.substr(dot + 1))});
    }
    auto ids = j.at("query_ids").get<std::vector<std::string>>();
    std::vector<AttrSet> rows;
    for (const auto& r : j.at("rows")) {
      const auto bits = r.get<std::string>();
      if (bits.size() != attrs.size()) throw FormatError("context row '" + bits + "' has wrong width");
      AttrSet row(attrs.size());
      for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
          row.set(i);
        } else if (bits[i] != '0') {
          throw FormatError("context row '" + bits + "' is not a 0/1 string");
        }
      }
      rows.push_back(std::move(row));
    }
    return ExtractionContext(std::move(attrs), std::move(ids), std::move(rows));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("context: ") + e.what());
  }
}

ExtractionContext ExtractionContext::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read context '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("context '" + path.string() + "': " + e.what());
  }
  return from_json(j);
}

ExtractionContext build_context(const Workload& workload) {
  std::set<AttributeRef> axis;
  for (const auto& q : workload.queries) axis.insert(q.indexable_attrs.begin(), q.indexable_attrs.end());
  std::vector<AttributeRef> attrs(axis.begin(), axis.end());  // (table, column) order

  std::vector<std::string> ids;
  std::vector<AttrSet> rows;
  for (const auto& q : workload.queries) {
    AttrSet row(attrs.size());
    for (const auto& a : q.indexable_attrs) {
      row.set(static_cast<std::size_t>(std::lower_bound(attrs.begin(), attrs.end(), a) - attrs.begin()));
    }
    ids.push_back(q.id);
    rows.push_back(std::move(row));
  }
  return ExtractionContext(std::move(attrs), std::move(ids), std::move(rows));
}

}  // namespace idxminer

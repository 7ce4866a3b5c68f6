#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "idxminer/catalog.hpp"
#include "idxminer/close_miner.hpp"
#include "idxminer/ratio.hpp"
#include "idxminer/selection.hpp"
#include "idxminer/workload.hpp"
#include "json.hpp"

namespace idxminer {

// Closed-form access-path cost model standing in for measured response time.
struct CostModelParams {
  double seq_page_cost = 1.0;            // per row scanned
  double index_probe_cost = 10.0;        // per index level traversed
  double index_row_cost = 1.0;           // per row fetched through an index
  double index_maintenance_cost = 100.0; // per index on an updated table
  double default_selectivity = 0.1;      // equality when the cardinality is unusable
  double range_selectivity = 0.3;        // range, BETWEEN, LIKE, IN
  double cold_multiplier = 3.0;          // first touch of a table in a run

  void validate() const;
  nlohmann::json to_json() const;
  // Fields absent from `j` keep their current values.
  CostModelParams with_overrides(const nlohmann::json& j) const;
  static CostModelParams load(const std::filesystem::path& path);
};

struct ProtocolParams {
  std::size_t replications = 10;
  double confidence_level = 0.95;
  double noise = 0.05;  // half-width of the uniform multiplicative noise

  void validate() const;
};

// Tables already touched during one protocol run.
class ColdState {
 public:
  bool touch(const std::string& table) { return warm_.insert(table).second; }

 private:
  std::set<std::string> warm_;
};

// Sum over referenced tables of min(full scan, best prefix-matching index),
// plus maintenance for every configured index on an UPDATE's target table.
// With `cold`, a table's first access is multiplied by cold_multiplier.
double estimate_query_cost(const WorkloadQuery& query, const IndexConfiguration& config,
                           const Catalog& catalog, const CostModelParams& params,
                           ColdState* cold = nullptr);

struct ProtocolResult {
  double mean_cost = 0.0;
  double ci_halfwidth = 0.0;
};

// Unrecorded cold pass, then `replications` recorded passes with seeded
// multiplicative noise. Mean over all recorded query costs; Student-t
// half-width over per-replication means.
ProtocolResult run_protocol(const Workload& workload, const IndexConfiguration& config,
                            const Catalog& catalog, const CostModelParams& cost,
                            const ProtocolParams& protocol, std::uint64_t seed);

struct SweepRow {
  Ratio minsup;
  std::size_t index_count = 0;
  double mean_cost = 0.0;
  double ci_halfwidth = 0.0;
  double baseline_mean_cost = 0.0;
};

struct SweepReport {
  std::vector<SweepRow> rows;
};

struct SweepOptions {
  Strategy strategy = Strategy::kNaive;
  std::optional<SelectivityBand> band;
  CostModelParams cost;
  ProtocolParams protocol;
  std::uint64_t seed = 42;
  Execution execution = Execution::kParallel;
};

// mine -> candidates -> strategy -> protocol for each grid point; every row
// uses the same seed, so rows differ only through their configuration.
SweepReport sweep_minsup(const Workload& workload, const Catalog& catalog,
                         const std::vector<Ratio>& minsup_grid, const SweepOptions& options);

// Configuration recommended at one threshold.
IndexConfiguration recommend(const ExtractionContext& context, const Catalog& catalog,
                             const Ratio& minsup, Strategy strategy,
                             std::optional<SelectivityBand> band);

// "minsup,index_count,mean_cost,ci_halfwidth,baseline_mean_cost" + one line
// per row; minsup with 4 decimals, costs with 6.
std::string report_csv(const SweepReport& report);

}  // namespace idxminer

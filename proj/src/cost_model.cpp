#include "idxminer/cost_model.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <random>

#include "idxminer/context.hpp"
#include "idxminer/error.hpp"

namespace idxminer {

void CostModelParams::validate() const {
  for (double c : {seq_page_cost, index_probe_cost, index_row_cost, index_maintenance_cost}) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw ParamError("cost model costs must be >= 0");
  }
  for (double s : {default_selectivity, range_selectivity}) {
    if (!(s > 0.0 && s <= 1.0)) throw ParamError("cost model selectivities must be in (0, 1]");
  }
  if (!(cold_multiplier >= 1.0) || !std::isfinite(cold_multiplier)) {
    throw ParamError("cold_multiplier must be >= 1");
  }
}

nlohmann::json CostModelParams::to_json() const {
  return {{"seq_page_cost", seq_page_cost},
          {"index_probe_cost", index_probe_cost},
          {"index_row_cost", index_row_cost},
          {"index_maintenance_cost", index_maintenance_cost},
          {"default_selectivity", default_selectivity},
          {"range_selectivity", range_selectivity},
          {"cold_multiplier", cold_multiplier}};
}

CostModelParams CostModelParams::with_overrides(const nlohmann::json& j) const {
  if (!j.is_object()) throw FormatError("cost parameters must be a JSON object");
  CostModelParams p = *this;
  const std::map<std::string, double*> fields = {
      {"seq_page_cost", &p.seq_page_cost},
      {"index_probe_cost", &p.index_probe_cost},
      {"index_row_cost", &p.index_row_cost},
      {"index_maintenance_cost", &p.index_maintenance_cost},
      {"default_selectivity", &p.default_selectivity},
      {"range_selectivity", &p.range_selectivity},
      {"cold_multiplier", &p.cold_multiplier}};
  for (const auto& [key, value] : j.items()) {
    const auto f = fields.find(key);
    if (f == fields.end()) throw FormatError("unknown cost parameter '" + key + "'");
    if (!value.is_number()) throw FormatError("cost parameter '" + key + "' must be a number");
    *f->second = value.get<double>();
  }
  p.validate();
  return p;
}

CostModelParams CostModelParams::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read cost parameters '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("cost parameters '" + path.string() + "': " + e.what());
  }
  return CostModelParams{}.with_overrides(j);
}

void ProtocolParams::validate() const {
  if (replications < 2) throw ParamError("replications must be >= 2 for a confidence interval");
  if (!(confidence_level > 0.0 && confidence_level < 1.0)) {
    throw ParamError("confidence_level must be in (0, 1)");
  }
  if (!(noise >= 0.0 && noise < 1.0)) throw ParamError("noise must be in [0, 1)");
}

namespace {

double selectivity(const ResolvedPredicate& p, const Catalog& catalog,
                   const CostModelParams& params) {
  if (p.kind == sql::PredicateKind::kRange) return params.range_selectivity;
  const auto card = catalog.cardinality(p.attr);
  return card > 0 ? 1.0 / static_cast<double>(card) : params.default_selectivity;
}

double table_access_cost(const std::string& table, const WorkloadQuery& query,
                         const IndexConfiguration& config, const Catalog& catalog,
                         const CostModelParams& params) {
  const auto& t = catalog.table(table);
  const auto rows = static_cast<double>(t.row_count);

  // Most selective predicate per column of this table.
  std::map<std::string, double> best;
  for (const auto& p : query.predicates) {
    if (p.attr.table != table) continue;
    const auto s = selectivity(p, catalog, params);
    auto [it, inserted] = best.try_emplace(p.attr.column, s);
    if (!inserted) it->second = std::min(it->second, s);
  }

  double cost = rows * params.seq_page_cost;
  const double levels = std::ceil(std::log2(rows + 1.0));
  for (const auto& idx : config.indexes) {
    if (idx.table != table) continue;
    double sel = 1.0;
    std::size_t matched = 0;
    for (const auto& col : idx.columns) {
      const auto it = best.find(col);
      if (it == best.end()) break;
      sel *= it->second;
      ++matched;
    }
    if (matched == 0) continue;
    cost = std::min(cost, levels * params.index_probe_cost + sel * rows * params.index_row_cost);
  }
  return cost;
}

double unit_noise(std::mt19937_64& rng) {
  // Uniform in [-1, 1); mt19937_64 output is fixed by the standard.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
}

}  // namespace

double estimate_query_cost(const WorkloadQuery& query, const IndexConfiguration& config,
                           const Catalog& catalog, const CostModelParams& params,
                           ColdState* cold) {
  double total = 0.0;
  for (const auto& table : query.tables) {
    auto c = table_access_cost(table, query, config, catalog, params);
    if (cold && cold->touch(table)) c *= params.cold_multiplier;
    total += c;
  }
  if (query.kind == sql::StatementKind::kUpdate) {
    total += params.index_maintenance_cost * static_cast<double>(config.count_on(query.update_target));
  }
  return total;
}

ProtocolResult run_protocol(const Workload& workload, const IndexConfiguration& config,
                            const Catalog& catalog, const CostModelParams& cost,
                            const ProtocolParams& protocol, std::uint64_t seed) {
  protocol.validate();
  cost.validate();
  if (workload.empty()) return {};

  ColdState cold;
  for (const auto& q : workload.queries) estimate_query_cost(q, config, catalog, cost, &cold);

  std::mt19937_64 rng(seed);
  const auto n = static_cast<double>(workload.queries.size());
  std::vector<double> rep_means;
  rep_means.reserve(protocol.replications);
  for (std::size_t r = 0; r < protocol.replications; ++r) {
    double sum = 0.0;
    for (const auto& q : workload.queries) {
      const double base = estimate_query_cost(q, config, catalog, cost, &cold);
      sum += base * (1.0 + protocol.noise * unit_noise(rng));
    }
    rep_means.push_back(sum / n);
  }

  // Shifted sums keep identical replications at exactly zero variance.
  const double pivot = rep_means.front();
  double d_sum = 0.0;
  double d_sq = 0.0;
  for (double m : rep_means) {
    d_sum += m - pivot;
    d_sq += (m - pivot) * (m - pivot);
  }
  const auto reps = static_cast<double>(rep_means.size());
  ProtocolResult out;
  out.mean_cost = pivot + d_sum / reps;
  const double var = std::max(0.0, (d_sq - d_sum * d_sum / reps) / (reps - 1.0));
  if (var > 0.0) {
    const boost::math::students_t dist(reps - 1.0);
    const double t = boost::math::quantile(dist, 0.5 + protocol.confidence_level / 2.0);
    out.ci_halfwidth = t * std::sqrt(var / reps);
  }
  return out;
}

IndexConfiguration recommend(const ExtractionContext& context, const Catalog& catalog,
                             const Ratio& minsup, Strategy strategy,
                             std::optional<SelectivityBand> band) {
  const auto closed = mine_close(context, MiningParams{minsup});
  auto config = apply_strategy(generate_candidates(closed, catalog), catalog, strategy, band);
  config.minsup = minsup;
  return config;
}

SweepReport sweep_minsup(const Workload& workload, const Catalog& catalog,
                         const std::vector<Ratio>& minsup_grid, const SweepOptions& options) {
  if (minsup_grid.empty()) throw ParamError("minsup grid is empty");
  for (std::size_t i = 0; i < minsup_grid.size(); ++i) {
    minsup_grid[i].validate_support();
    if (i > 0 && !(minsup_grid[i - 1] < minsup_grid[i])) {
      throw ParamError("minsup grid must be strictly increasing");
    }
  }
  options.protocol.validate();
  options.cost.validate();
  if (options.strategy == Strategy::kCardinalityBand) {
    if (!options.band) throw ParamError("cardinality-band strategy requires band bounds");
    options.band->validate();
  }

  const auto context = build_context(workload);
  IndexConfiguration empty;
  empty.strategy = options.strategy;
  const auto baseline =
      run_protocol(workload, empty, catalog, options.cost, options.protocol, options.seed);

  SweepReport report;
  report.rows.resize(minsup_grid.size());
  std::vector<std::exception_ptr> errors(minsup_grid.size());
  auto point = [&](std::size_t i) {
    try {
      const auto config =
          recommend(context, catalog, minsup_grid[i], options.strategy, options.band);
      const auto r =
          run_protocol(workload, config, catalog, options.cost, options.protocol, options.seed);
      report.rows[i] = {minsup_grid[i], config.indexes.size(), r.mean_cost, r.ci_halfwidth,
                        baseline.mean_cost};
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const auto n = static_cast<std::ptrdiff_t>(minsup_grid.size());
  if (options.execution == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) point(static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) point(static_cast<std::size_t>(i));
  }
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw Error("minsup " + minsup_grid[i].str() + ": " + e.what());
    }
  }
  return report;
}

std::string report_csv(const SweepReport& report) {
  std::string out = "minsup,index_count,mean_cost,ci_halfwidth,baseline_mean_cost\n";
  char buf[256];
  for (const auto& r : report.rows) {
    std::snprintf(buf, sizeof buf, "%.4f,%zu,%.6f,%.6f,%.6f\n", r.minsup.value(), r.index_count,
                  r.mean_cost, r.ci_halfwidth, r.baseline_mean_cost);
    out += buf;
  }
  return out;
}

}  // namespace idxminer

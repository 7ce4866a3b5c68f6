#include "idxminer/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "CLI11.hpp"
#include "idxminer/close_miner.hpp"
#include "idxminer/context.hpp"
#include "idxminer/cost_model.hpp"
#include "idxminer/error.hpp"
#include "idxminer/workload.hpp"

namespace idxminer::cli {
namespace {

// Error tagged with the pipeline stage that raised it.
struct StageError {
  std::string stage;
  std::string message;
};

template <typename F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    throw StageError{name, e.what()};
  }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::uint64_t resolve_seed(const RunConfig& run) {
  if (run.seed) return *run.seed;
  if (const char* env = std::getenv("IDXMINER_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw ParamError("IDXMINER_SEED='" + std::string(env) + "' is not an unsigned integer");
  }
  return 42;
}

struct StrategyChoice {
  Strategy strategy;
  std::optional<SelectivityBand> band;
};

StrategyChoice resolve_strategy(const RunConfig& run) {
  StrategyChoice c{parse_strategy(run.strategy), std::nullopt};
  if (run.band && c.strategy != Strategy::kCardinalityBand) {
    throw ParamError("--band is only valid with --strategy cardinality-band");
  }
  if (c.strategy == Strategy::kCardinalityBand) {
    SelectivityBand band;  // defaults 0.01, 0.5
    if (run.band) {
      const auto comma = run.band->find(',');
      if (comma == std::string::npos) throw ParamError("--band expects lo,hi");
      try {
        band.lo = std::stod(run.band->substr(0, comma));
        band.hi = std::stod(run.band->substr(comma + 1));
      } catch (const std::exception&) {
        throw ParamError("--band expects two numbers, got '" + *run.band + "'");
      }
    }
    band.validate();
    c.band = band;
  }
  return c;
}

struct Inputs {
  Catalog catalog;
  Workload workload;
};

Inputs load_inputs(const RunConfig& run) {
  Inputs in;
  in.catalog = stage("catalog", [&] { return Catalog::load(run.catalog_path); });
  in.workload = stage("analyze", [&] { return load_workload(run.workload_path, in.catalog); });
  return in;
}

void prepare_out_dir(const RunConfig& run) {
  std::error_code ec;
  std::filesystem::create_directories(run.out_dir, ec);
  if (ec) throw StageError{"output", "cannot create '" + run.out_dir.string() + "'"};
}

template <typename F>
int guarded(std::ostream& err, F&& f) {
  try {
    f();
    return 0;
  } catch (const StageError& e) {
    err << "error [" << e.stage << "]: " << e.message << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 1;
}

}  // namespace

int cmd_analyze(const RunConfig& run, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto in = load_inputs(run);
    const auto context = build_context(in.workload);
    prepare_out_dir(run);
    stage("output", [&] {
      write_file(run.out_dir / "context.json", dump(context.to_json()));
      return 0;
    });
    if (in.workload.empty()) err << "warning: workload contains no statements\n";
    out << "queries: " << context.total_queries() << "\n"
        << "indexable attributes: " << context.attribute_count() << "\n";
  });
}

int cmd_recommend(const RunConfig& run, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto choice = stage("params", [&] { return resolve_strategy(run); });
    const auto minsup = stage("params", [&] {
      auto m = Ratio::parse(run.minsup);
      m.validate_support();
      return m;
    });
    const auto in = load_inputs(run);
    const auto context = build_context(in.workload);
    const auto closed = stage("mine", [&] { return mine_close(context, MiningParams{minsup}); });
    const auto candidates = stage("select", [&] { return generate_candidates(closed, in.catalog); });
    auto config = stage("select", [&] {
      return apply_strategy(candidates, in.catalog, choice.strategy, choice.band);
    });
    config.minsup = minsup;
    const auto ddl = emit_ddl(config);

    prepare_out_dir(run);
    stage("output", [&] {
      write_file(run.out_dir / "closed_sets.json", dump(closed.to_json()));
      write_file(run.out_dir / "configuration.json", dump(config.to_json()));
      write_file(run.out_dir / "indexes.sql", ddl);
      return 0;
    });

    if (closed.empty_context) err << "warning: extraction context has no attributes\n";
    if (choice.strategy == Strategy::kLargeTables) {
      bool any_large = false;
      for (const auto& t : in.catalog.tables()) any_large = any_large || t.is_large;
      if (!any_large) err << "warning: no catalog table is marked is_large\n";
    }
    out << "minsup:            " << minsup.str() << "\n"
        << "strategy:          " << to_string(choice.strategy) << "\n"
        << "closed itemsets:   " << closed.itemsets.size() << "\n"
        << "candidate indexes: " << candidates.size() << "\n"
        << "selected indexes:  " << config.indexes.size() << "\n";
  });
}

int cmd_sweep(const RunConfig& run, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    SweepOptions options;
    const auto choice = stage("params", [&] { return resolve_strategy(run); });
    options.strategy = choice.strategy;
    options.band = choice.band;
    options.seed = stage("params", [&] { return resolve_seed(run); });
    options.protocol.replications = run.replications;
    stage("params", [&] {
      options.protocol.validate();
      return 0;
    });
    if (run.cost_params) {
      options.cost = stage("params", [&] { return CostModelParams::load(*run.cost_params); });
    }
    const auto grid = stage("params", [&] { return parse_grid(run.grid); });
    const auto in = load_inputs(run);
    const auto report =
        stage("sweep", [&] { return sweep_minsup(in.workload, in.catalog, grid, options); });

    prepare_out_dir(run);
    stage("output", [&] {
      write_file(run.out_dir / "sweep.csv", report_csv(report));
      return 0;
    });

    const auto& rows = report.rows;
    std::size_t best = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i].mean_cost < rows[best].mean_cost) best = i;
    }
    const auto& b = rows[best];
    const double gain =
        b.baseline_mean_cost > 0 ? (b.baseline_mean_cost - b.mean_cost) / b.baseline_mean_cost : 0;
    char line[256];
    std::snprintf(line, sizeof line,
                  "best minsup %.4f: %zu indexes, mean cost %.6f vs baseline %.6f (gain %.2f%%)\n",
                  b.minsup.value(), b.index_count, b.mean_cost, b.baseline_mean_cost, gain * 100.0);
    out << "grid points: " << rows.size() << "\n" << line;
  });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Index advisor: mines frequent closed itemsets of a SQL workload"};
  app.name("idxminer");
  app.require_subcommand(1);
  RunConfig cfg;
  std::uint64_t seed = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--workload", cfg.workload_path, "Workload file (';'-terminated SQL)")
        ->required();
    sub->add_option("--catalog", cfg.catalog_path, "Catalog JSON")->required();
    sub->add_option("--out-dir", cfg.out_dir, "Directory for output artifacts");
  };
  auto strategy = [&](CLI::App* sub) {
    sub->add_option("--strategy", cfg.strategy, "naive | large-tables | cardinality-band");
    sub->add_option("--band", cfg.band, "Selectivity band lo,hi (cardinality-band only)");
  };

  auto* analyze = app.add_subcommand("analyze", "Build the query x attribute context");
  common(analyze);

  auto* rec = app.add_subcommand("recommend", "Mine closed itemsets and emit index DDL");
  common(rec);
  strategy(rec);
  rec->add_option("--minsup", cfg.minsup, "Minimum support, 'n/d' or decimal");

  auto* sweep = app.add_subcommand("sweep", "Evaluate a minsup grid under the cost model");
  common(sweep);
  strategy(sweep);
  sweep->add_option("--grid", cfg.grid, "start:stop:step or comma list");
  sweep->add_option("--replications", cfg.replications, "Recorded passes per grid point");
  auto* seed_opt = sweep->add_option("--seed", seed, "Noise seed (else $IDXMINER_SEED, else 42)");
  sweep->add_option("--cost-params", cfg.cost_params, "Cost model overrides (JSON)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error [args]: " << e.what() << "\n";
    return 2;
  }
  if (seed_opt->count() > 0) cfg.seed = seed;

  if (analyze->parsed()) return cmd_analyze(cfg, out, err);
  if (rec->parsed()) return cmd_recommend(cfg, out, err);
  return cmd_sweep(cfg, out, err);
}

}  // namespace idxminer::cli

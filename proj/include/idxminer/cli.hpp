#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "idxminer/selection.hpp"

namespace idxminer::cli {

struct RunConfig {
  std::filesystem::path workload_path;
  std::filesystem::path catalog_path;
  std::string minsup = "2/6";
  std::string strategy = "naive";
  std::optional<std::string> band;  // "lo,hi"
  std::string grid = "0.05:1.0:0.05";
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed;  // falls back to IDXMINER_SEED, then 42
  std::size_t replications = 10;
  std::optional<std::filesystem::path> cost_params;
};

// Each returns the process exit status; diagnostics go to `err`.
int cmd_analyze(const RunConfig& run, std::ostream& out, std::ostream& err);
int cmd_recommend(const RunConfig& run, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& run, std::ostream& out, std::ostream& err);

// Full command line: idxminer <analyze|recommend|sweep> [flags].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace idxminer::cli

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "dcho/metrics.hpp"

namespace dcho {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitConfig = 2, kExitRuntime = 3 };

struct RunOptions {
  std::filesystem::path config;
  std::string hdma;
  std::optional<std::uint64_t> seed;  // falls back to the config seed
  std::filesystem::path out_dir = "out";
};

struct CompareOptions {
  std::filesystem::path config;
  std::vector<std::uint64_t> seeds;
  std::filesystem::path out_dir = "out";
  unsigned jobs = 0;  // 0: hardware concurrency
};

/// Comma-separated seeds and inclusive ranges, e.g. "1-5,9". ParseError on
/// malformed or empty input.
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

/// Single run: writes the per-run CSVs plus a one-row summary.csv and prints
/// one summary line. Returns an ExitCode; diagnostics go to `err`.
int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err);

/// Every strategy on every seed. summary.csv rows are ordered by seed, then
/// nci, a3rsrp, speed. Prints a per-strategy table of means across seeds.
int cmd_compare(const CompareOptions& opts, std::ostream& out, std::ostream& err);

/// Runs the (strategy, seed) grid, possibly concurrently, writing per-run
/// CSVs when `out_dir` is set. Results come back in summary order.
std::vector<RunMetrics> run_grid(const ScenarioConfig& cfg, std::span<const std::uint64_t> seeds,
                                 const std::filesystem::path* out_dir, unsigned jobs = 0);

}  // namespace dcho

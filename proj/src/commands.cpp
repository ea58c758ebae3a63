#include "dcho/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <thread>

#include "dcho/config.hpp"
#include "dcho/errors.hpp"

namespace dcho {

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  std::size_t pos = 0;
  const auto number = [&]() -> std::uint64_t {
    const auto start = pos;
    std::uint64_t v = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      const auto digit = static_cast<std::uint64_t>(text[pos] - '0');
      if (v > (UINT64_MAX - digit) / 10) throw ParseError("seed out of range", start);
      v = v * 10 + digit;
      ++pos;
    }
    if (pos == start) throw ParseError("expected a seed at byte " + std::to_string(pos), pos);
    return v;
  };
  while (true) {
    const auto first = number();
    auto last = first;
    if (pos < text.size() && text[pos] == '-') {
      ++pos;
      last = number();
      if (last < first) throw ParseError("descending seed range", pos);
    }
    for (auto s = first;; ++s) {
      seeds.push_back(s);
      if (s == last) break;
    }
    if (pos == text.size()) break;
    if (text[pos] != ',') throw ParseError("expected ',' at byte " + std::to_string(pos), pos);
    ++pos;
  }
  return seeds;
}

std::vector<RunMetrics> run_grid(const ScenarioConfig& cfg, std::span<const std::uint64_t> seeds,
                                 const std::filesystem::path* out_dir, unsigned jobs) {
  struct Job {
    std::string_view strategy;
    std::uint64_t seed;
  };
  std::vector<Job> grid;
  for (auto seed : seeds) {
    for (auto name : kStrategyNames) grid.push_back({name, seed});
  }

  std::vector<RunMetrics> results(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        const auto output = run(cfg, grid[i].strategy, grid[i].seed);
        results[i] = compute_metrics(output);
        if (out_dir) write_run_csv(*out_dir, output, results[i]);
        // The raw series are already on disk; keep only the summary.
        results[i].sinr_samples.clear();
        results[i].throughput_series.clear();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, grid.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < jobs; ++i) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

namespace {

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParseError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

std::string mbps(double bps) { return format_number(bps / 1e6); }

}  // namespace

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  if (std::find(std::begin(kStrategyNames), std::end(kStrategyNames), opts.hdma) ==
      std::end(kStrategyNames)) {
    err << "usage error: --hdma must be one of nci, a3rsrp, speed (got '" << opts.hdma << "')\n";
    return kExitUsage;
  }
  return guarded(err, [&] {
    const auto cfg = parse_config(opts.config);
    const auto seed = opts.seed.value_or(cfg.seed);
    const auto output = run(cfg, opts.hdma, seed);
    const auto metrics = compute_metrics(output);
    write_run_csv(opts.out_dir, output, metrics);
    const RunMetrics rows[] = {metrics};
    write_summary_csv(opts.out_dir, rows);
    out << "strategy=" << metrics.strategy << " seed=" << seed
        << " handovers=" << metrics.handover_count << " ping_pongs=" << metrics.ping_pong_count
        << " mean_sinr_db=" << format_number(metrics.mean_sinr_db)
        << " mean_throughput_mbps=" << mbps(metrics.mean_throughput_bps) << '\n';
    return static_cast<int>(kExitOk);
  });
}

int cmd_compare(const CompareOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.seeds.empty()) {
    err << "usage error: --seeds needs at least one seed\n";
    return kExitUsage;
  }
  return guarded(err, [&] {
    const auto cfg = parse_config(opts.config);
    const auto runs = run_grid(cfg, opts.seeds, &opts.out_dir, opts.jobs);
    write_summary_csv(opts.out_dir, runs);

    char line[160];
    std::snprintf(line, sizeof line, "%-8s %12s %12s %14s %20s\n", "hdma", "handovers",
                  "ping_pongs", "mean_sinr_db", "mean_throughput_mbps");
    out << line;
    const double n = static_cast<double>(opts.seeds.size());
    for (auto name : kStrategyNames) {
      double ho = 0, pp = 0, sinr = 0, tp = 0;
      for (const auto& m : runs) {
        if (m.strategy != name) continue;
        ho += m.handover_count;
        pp += m.ping_pong_count;
        sinr += m.mean_sinr_db;
        tp += m.mean_throughput_bps;
      }
      std::snprintf(line, sizeof line, "%-8s %12.2f %12.2f %14.3f %20.3f\n",
                    std::string(name).c_str(), ho / n, pp / n, sinr / n, tp / n / 1e6);
      out << line;
    }
    return static_cast<int>(kExitOk);
  });
}

}  // namespace dcho

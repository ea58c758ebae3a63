#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dcho/commands.hpp"
#include "dcho/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Dual-connectivity secondary-node handover simulator"};
  app.require_subcommand(1);

  dcho::RunOptions run_opts;
  std::uint64_t seed = 0;
  auto* run = app.add_subcommand("run", "Simulate one strategy on one seed");
  run->add_option("--config", run_opts.config, "Scenario JSON")->required();
  run->add_option("--hdma", run_opts.hdma, "nci | a3rsrp | speed")->required();
  auto* seed_opt = run->add_option("--seed", seed, "Shadowing seed (default: config seed)");
  run->add_option("--out", run_opts.out_dir, "Output directory")->capture_default_str();

  dcho::CompareOptions cmp_opts;
  std::string seeds = "1";
  auto* compare = app.add_subcommand("compare", "Run all strategies over a list of seeds");
  compare->add_option("--config", cmp_opts.config, "Scenario JSON")->required();
  compare->add_option("--seeds", seeds, "Seeds, e.g. 1-10 or 1,4,7")->capture_default_str();
  compare->add_option("--out", cmp_opts.out_dir, "Output directory")->capture_default_str();
  compare->add_option("--jobs", cmp_opts.jobs, "Worker threads (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? dcho::kExitOk : dcho::kExitUsage;
  }

  if (*run) {
    if (*seed_opt) run_opts.seed = seed;
    return dcho::cmd_run(run_opts, std::cout, std::cerr);
  }
  try {
    cmp_opts.seeds = dcho::parse_seed_list(seeds);
  } catch (const dcho::ParseError& e) {
    std::cerr << "usage error: --seeds: " << e.what() << '\n';
    return dcho::kExitUsage;
  }
  return dcho::cmd_compare(cmp_opts, std::cout, std::cerr);
}

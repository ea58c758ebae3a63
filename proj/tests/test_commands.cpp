#include <filesystem>
#include <fstream>
#include <sstream>

#include "dcho/commands.hpp"
#include "dcho/errors.hpp"
#include "doctest.h"

using namespace dcho;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("dcho_cmd_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::filesystem::path short_config(double seconds) {
  std::ifstream in(DCHO_DEFAULT_SCENARIO);
  std::ostringstream text;
  text << in.rdbuf();
  auto s = text.str();
  const auto key = s.find("\"duration_s\"");
  REQUIRE(key != std::string::npos);
  const auto end = s.find(',', key);
  s.replace(key, end - key, "\"duration_s\": " + std::to_string(seconds));
  const auto path = std::filesystem::temp_directory_path() / "dcho_cmd_short.json";
  std::ofstream(path) << s;
  return path;
}

std::size_t line_count(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::size_t n = 0;
  for (std::string line; std::getline(f, line);) ++n;
  return n;
}

}  // namespace

TEST_CASE("parse_seed_list") {
  CHECK(parse_seed_list("7") == std::vector<std::uint64_t>{7});
  CHECK(parse_seed_list("1-3,9") == std::vector<std::uint64_t>{1, 2, 3, 9});
  CHECK(parse_seed_list("4,2") == std::vector<std::uint64_t>{4, 2});
  CHECK_THROWS_AS(parse_seed_list(""), ParseError);
  CHECK_THROWS_AS(parse_seed_list("1,"), ParseError);
  CHECK_THROWS_AS(parse_seed_list("5-2"), ParseError);
  CHECK_THROWS_AS(parse_seed_list("a"), ParseError);
  CHECK_THROWS_AS(parse_seed_list("99999999999999999999999"), ParseError);
}

TEST_CASE("run with the speed-based strategy reports zero handovers") {
  const auto dir = scratch_dir("run_speed");
  std::ostringstream out, err;
  const int rc = cmd_run({DCHO_DEFAULT_SCENARIO, "speed", 7, dir}, out, err);
  CHECK(rc == kExitOk);
  CHECK(out.str().rfind("strategy=speed seed=7 handovers=0 ", 0) == 0);
  CHECK(err.str().empty());
  CHECK(std::filesystem::exists(dir / "summary.csv"));
  CHECK(std::filesystem::exists(dir / "timeseries_speed_7.csv"));
  CHECK(std::filesystem::exists(dir / "sinr_hist_speed_7.csv"));
  CHECK(std::filesystem::exists(dir / "sinr_cdf_speed_7.csv"));
  CHECK(line_count(dir / "timeseries_speed_7.csv") == 40001);
  std::filesystem::remove_all(dir);
}

TEST_CASE("run exit codes") {
  std::ostringstream out, err;
  CHECK(cmd_run({DCHO_DEFAULT_SCENARIO, "bogus", 1, scratch_dir("bogus")}, out, err) == kExitUsage);
  CHECK(err.str().find("usage") != std::string::npos);
  err.str("");
  CHECK(cmd_run({"/nonexistent.json", "nci", 1, scratch_dir("nofile")}, out, err) == kExitConfig);
  CHECK(err.str().find("/nonexistent.json") != std::string::npos);

  const auto blocker = scratch_dir("blocker");
  std::ofstream(blocker) << "x";
  CHECK(cmd_run({short_config(0.1), "nci", 1, blocker / "out"}, out, err) == kExitRuntime);
  std::filesystem::remove_all(blocker);
}

TEST_CASE("run falls back to the config seed") {
  const auto dir = scratch_dir("cfg_seed");
  std::ostringstream out, err;
  CHECK(cmd_run({short_config(0.1), "nci", std::nullopt, dir}, out, err) == kExitOk);
  CHECK(out.str().find("seed=1 ") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("compare writes three rows per seed and a table") {
  const auto dir = scratch_dir("compare");
  std::ostringstream out, err;
  CompareOptions opts{short_config(2.0), {3, 4}, dir, 2};
  CHECK(cmd_compare(opts, out, err) == kExitOk);
  CHECK(line_count(dir / "summary.csv") == 1 + 3 * 2);
  std::ifstream summary(dir / "summary.csv");
  std::string header, row;
  std::getline(summary, header);
  const char* order[] = {"nci,3,", "a3rsrp,3,", "speed,3,", "nci,4,", "a3rsrp,4,", "speed,4,"};
  for (const auto* prefix : order) {
    std::getline(summary, row);
    CHECK(row.rfind(prefix, 0) == 0);
  }
  const auto table = out.str();
  CHECK(table.find("nci") != std::string::npos);
  CHECK(table.find("a3rsrp") != std::string::npos);
  CHECK(table.find("speed") != std::string::npos);
  CHECK(std::count(table.begin(), table.end(), '\n') == 4);
  std::filesystem::remove_all(dir);
}

TEST_CASE("compare is independent of the worker count") {
  const auto d1 = scratch_dir("jobs1");
  const auto d4 = scratch_dir("jobs4");
  std::ostringstream out1, out4, err;
  CHECK(cmd_compare({short_config(1.0), {1, 2}, d1, 1}, out1, err) == kExitOk);
  CHECK(cmd_compare({short_config(1.0), {1, 2}, d4, 4}, out4, err) == kExitOk);
  CHECK(out1.str() == out4.str());
  for (const auto& e : std::filesystem::directory_iterator(d1)) {
    std::ifstream a(e.path()), b(d4 / e.path().filename());
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
  }
  std::filesystem::remove_all(d1);
  std::filesystem::remove_all(d4);
}

TEST_CASE("compare without seeds is a usage error") {
  std::ostringstream out, err;
  CHECK(cmd_compare({DCHO_DEFAULT_SCENARIO, {}, scratch_dir("none"), 1}, out, err) == kExitUsage);
}

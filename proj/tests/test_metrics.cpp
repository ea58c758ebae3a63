#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "dcho/config.hpp"
#include "dcho/errors.hpp"
#include "dcho/metrics.hpp"
#include "doctest.h"

using namespace dcho;

namespace {

const Ncgi A = make_ncgi(1, GnbType::SmallSub6, 1, 1);
const Ncgi B = make_ncgi(1, GnbType::SmallSub6, 2, 1);
const Ncgi C = make_ncgi(1, GnbType::MmWave, 1, 1);

HandoverEvent change(double t, Ncgi from, Ncgi to) {
  HandoverEvent e;
  e.time_s = t;
  e.from = from;
  e.to = to;
  e.kind = HandoverKind::SnChange;
  return e;
}

HandoverEvent of_kind(HandoverKind k) {
  HandoverEvent e;
  e.kind = k;
  return e;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("dcho_metrics_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("count_handovers excludes releases") {
  CHECK(count_handovers({}) == 0);
  const std::vector<HandoverEvent> ev{of_kind(HandoverKind::SnAttach), of_kind(HandoverKind::SnChange),
                                      of_kind(HandoverKind::SnRelease)};
  CHECK(count_handovers(ev) == 2);
}

TEST_CASE("count_ping_pongs") {
  const std::vector<HandoverEvent> quick{change(1.0, A, B), change(1.5, B, A)};
  CHECK(count_ping_pongs(quick, 1.0) == 1);
  const std::vector<HandoverEvent> slow{change(1.0, A, B), change(3.0, B, A)};
  CHECK(count_ping_pongs(slow, 1.0) == 0);
  const std::vector<HandoverEvent> chain{change(1.0, A, B), change(1.2, B, C)};
  CHECK(count_ping_pongs(chain, 1.0) == 0);
  const std::vector<HandoverEvent> edge{change(1.0, A, B), change(2.0, B, A), change(2.5, A, B)};
  CHECK(count_ping_pongs(edge, 1.0) == 2);
}

TEST_CASE("histogram bins are half-open and anchored at multiples of the width") {
  const std::vector<double> a{0.5, 0.7};
  CHECK(histogram(a, 1.0) == std::vector<HistogramBin>{{0.0, 2}});
  const std::vector<double> edge{1.0};
  CHECK(histogram(edge, 1.0) == std::vector<HistogramBin>{{1.0, 1}});
  CHECK(histogram({}, 1.0).empty());
  const std::vector<double> spread{-1.5, 0.2, 2.9};
  CHECK(histogram(spread, 1.0) ==
        std::vector<HistogramBin>{{-2.0, 1}, {-1.0, 0}, {0.0, 1}, {1.0, 0}, {2.0, 1}});
  CHECK(histogram(spread, 2.5) == std::vector<HistogramBin>{{-2.5, 1}, {0.0, 1}, {2.5, 1}});
  CHECK_THROWS_AS(histogram(spread, 0.0), DomainError);
}

TEST_CASE("cdf examples") {
  const std::vector<double> point{5, 5, 5};
  CHECK(cdf(point) == std::vector<CdfPoint>{{5, 1.0}});
  const std::vector<double> two{2, 1};
  CHECK(cdf(two) == std::vector<CdfPoint>{{1, 0.5}, {2, 1.0}});
  CHECK(cdf({}).empty());
}

TEST_CASE("histogram and cdf agree on random samples") {
  std::mt19937_64 rng(71);
  std::normal_distribution<double> sinr(5.0, 8.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> xs(1 + trial * 37);
    for (auto& x : xs) x = std::round(sinr(rng) * 4) / 4;
    std::size_t total = 0;
    for (const auto& b : histogram(xs, 1.0)) total += b.count;
    REQUIRE(total == xs.size());
    const auto c = cdf(xs);
    REQUIRE(c.back().fraction == 1.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      REQUIRE(c[i].fraction > 0.0);
      REQUIRE(c[i].fraction <= 1.0);
      if (i > 0) {
        REQUIRE(c[i].fraction > c[i - 1].fraction);
        REQUIRE(c[i].value > c[i - 1].value);
      }
    }
  }
}

TEST_CASE("metrics match the serving-cell series") {
  auto cfg = parse_config(DCHO_DEFAULT_SCENARIO);
  for (auto name : kStrategyNames) {
    const auto out = run(cfg, name, 2);
    const auto m = compute_metrics(out);
    CHECK(m.sinr_samples.size() == out.series.size());
    CHECK(m.throughput_series.size() == out.series.size());
    // Handovers equal the number of times a new SN starts carrying traffic.
    int changes = 0;
    std::optional<Ncgi> prev = out.series.front().sn;
    for (const auto& r : out.series) {
      if (r.sn && r.sn != prev) ++changes;
      prev = r.sn;
    }
    // A handover still executing when the run ends is not visible yet.
    int pending = 0;
    for (const auto& e : out.events) {
      if (e.kind != HandoverKind::SnRelease && e.tick + 50 >= out.series.size()) ++pending;
    }
    CAPTURE(name);
    CHECK(m.handover_count == changes + pending);
  }
}

TEST_CASE("CSV files for an empty run are header-only") {
  auto cfg = parse_config(DCHO_DEFAULT_SCENARIO);
  cfg.duration_s = 0.0;
  const auto out = run(cfg, "nci", 3);
  const auto dir = scratch_dir("empty");
  write_run_csv(dir, out, compute_metrics(out));
  CHECK(slurp(dir / "timeseries_nci_3.csv") == "time_s,sn_ncgi,sinr_db,throughput_bps\n");
  CHECK(slurp(dir / "sinr_hist_nci_3.csv") == "bin_low_db,count\n");
  CHECK(slurp(dir / "sinr_cdf_nci_3.csv") == "sinr_db,cdf\n");
  std::filesystem::remove_all(dir);
}

TEST_CASE("CSV output is reproducible and uses six significant digits") {
  auto cfg = parse_config(DCHO_DEFAULT_SCENARIO);
  cfg.duration_s = 1.0;
  const auto d1 = scratch_dir("rep1");
  const auto d2 = scratch_dir("rep2");
  std::vector<RunMetrics> rows;
  for (auto* dir : {&d1, &d2}) {
    rows.clear();
    for (auto name : kStrategyNames) {
      const auto out = run(cfg, name, 9);
      rows.push_back(compute_metrics(out));
      write_run_csv(*dir, out, rows.back());
    }
    write_summary_csv(*dir, rows);
  }
  for (const auto& entry : std::filesystem::directory_iterator(d1)) {
    CAPTURE(entry.path());
    CHECK(slurp(entry.path()) == slurp(d2 / entry.path().filename()));
  }
  const auto summary = slurp(d1 / "summary.csv");
  CHECK(summary.rfind("strategy,seed,handover_count,ping_pong_count,mean_sinr_db,mean_throughput_bps\n", 0) == 0);
  CHECK(std::count(summary.begin(), summary.end(), '\n') == 4);
  const auto ts = slurp(d1 / "timeseries_a3rsrp_9.csv");
  CHECK(ts.find("\n0,PLMN:02F839/TYPE:") != std::string::npos);
  CHECK(format_number(498361312.94) == "4.98361e+08");
  CHECK(format_number(0.001) == "0.001");
  CHECK(format_number(-12.3456789) == "-12.3457");
  std::filesystem::remove_all(d1);
  std::filesystem::remove_all(d2);
}

TEST_CASE("unwritable output directory is an IoError") {
  auto cfg = parse_config(DCHO_DEFAULT_SCENARIO);
  cfg.duration_s = 0.0;
  const auto out = run(cfg, "nci", 1);
  const auto file = scratch_dir("blocker");
  std::ofstream(file) << "not a directory";
  CHECK_THROWS_AS(write_run_csv(file / "sub", out, compute_metrics(out)), IoError);
  std::filesystem::remove_all(file);
}

#include "dcho/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "dcho/errors.hpp"

namespace dcho {

int count_handovers(std::span<const HandoverEvent> events) {
  return static_cast<int>(std::count_if(events.begin(), events.end(), [](const HandoverEvent& e) {
    return e.kind == HandoverKind::SnChange || e.kind == HandoverKind::SnAttach;
  }));
}

int count_ping_pongs(std::span<const HandoverEvent> events, double window_s) {
  int count = 0;
  const HandoverEvent* prev = nullptr;
  for (const auto& e : events) {
    if (e.kind != HandoverKind::SnChange) continue;
    if (prev && e.to == prev->from && e.time_s - prev->time_s <= window_s) ++count;
    prev = &e;
  }
  return count;
}

std::vector<HistogramBin> histogram(std::span<const double> samples, double bin_width) {
  if (!(bin_width > 0.0)) throw DomainError("histogram bin width must be > 0");
  if (samples.empty()) return {};
  const auto bin_of = [&](double x) { return static_cast<long long>(std::floor(x / bin_width)); };
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  const long long first = bin_of(*lo_it);
  const long long last = bin_of(*hi_it);
  std::vector<HistogramBin> bins(static_cast<std::size_t>(last - first + 1));
  for (std::size_t i = 0; i < bins.size(); ++i) {
    bins[i].low = static_cast<double>(first + static_cast<long long>(i)) * bin_width;
  }
  for (double x : samples) ++bins[static_cast<std::size_t>(bin_of(x) - first)].count;
  return bins;
}

std::vector<CdfPoint> cdf(std::span<const double> samples) {
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<CdfPoint> out;
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    out.push_back({sorted[i], static_cast<double>(i + 1) / n});
  }
  return out;
}

RunMetrics compute_metrics(const SimOutput& out, double ping_pong_window_s) {
  RunMetrics m;
  m.strategy = out.strategy;
  m.seed = out.seed;
  m.handover_count = count_handovers(out.events);
  m.ping_pong_count = count_ping_pongs(out.events, ping_pong_window_s);
  m.sinr_samples.reserve(out.series.size());
  m.throughput_series.reserve(out.series.size());
  for (const auto& r : out.series) {
    m.sinr_samples.push_back(r.sinr_db);
    m.throughput_series.emplace_back(r.time_s, r.throughput_bps);
  }
  if (!out.series.empty()) {
    const double n = static_cast<double>(out.series.size());
    m.mean_sinr_db = std::accumulate(m.sinr_samples.begin(), m.sinr_samples.end(), 0.0) / n;
    m.mean_throughput_bps =
        std::accumulate(m.throughput_series.begin(), m.throughput_series.end(), 0.0,
                        [](double acc, const auto& p) { return acc + p.second; }) /
        n;
  }
  return m;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  return f;
}

void close_checked(std::ofstream& f, const std::filesystem::path& path) {
  f.close();
  if (!f) throw IoError("failed writing " + path.string());
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string());
  }
}

std::string run_suffix(const std::string& strategy, std::uint64_t seed) {
  return strategy + "_" + std::to_string(seed) + ".csv";
}

}  // namespace

void write_run_csv(const std::filesystem::path& dir, const SimOutput& out,
                   const RunMetrics& metrics, double bin_width) {
  ensure_dir(dir);
  const auto suffix = run_suffix(out.strategy, out.seed);

  const auto ts_path = dir / ("timeseries_" + suffix);
  auto ts = open_for_write(ts_path);
  ts << "time_s,sn_ncgi,sinr_db,throughput_bps\n";
  for (const auto& r : out.series) {
    ts << format_number(r.time_s) << ',' << (r.sn ? format_ncgi(*r.sn) : std::string()) << ','
       << format_number(r.sinr_db) << ',' << format_number(r.throughput_bps) << '\n';
  }
  close_checked(ts, ts_path);

  const auto hist_path = dir / ("sinr_hist_" + suffix);
  auto hist = open_for_write(hist_path);
  hist << "bin_low_db,count\n";
  for (const auto& b : histogram(metrics.sinr_samples, bin_width)) {
    hist << format_number(b.low) << ',' << b.count << '\n';
  }
  close_checked(hist, hist_path);

  const auto cdf_path = dir / ("sinr_cdf_" + suffix);
  auto c = open_for_write(cdf_path);
  c << "sinr_db,cdf\n";
  for (const auto& p : cdf(metrics.sinr_samples)) {
    c << format_number(p.value) << ',' << format_number(p.fraction) << '\n';
  }
  close_checked(c, cdf_path);
}

void write_summary_csv(const std::filesystem::path& dir, std::span<const RunMetrics> runs) {
  ensure_dir(dir);
  const auto path = dir / "summary.csv";
  auto f = open_for_write(path);
  f << "strategy,seed,handover_count,ping_pong_count,mean_sinr_db,mean_throughput_bps\n";
  for (const auto& m : runs) {
    f << m.strategy << ',' << m.seed << ',' << m.handover_count << ',' << m.ping_pong_count << ','
      << format_number(m.mean_sinr_db) << ',' << format_number(m.mean_throughput_bps) << '\n';
  }
  close_checked(f, path);
}

}  // namespace dcho

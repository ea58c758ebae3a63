#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dcho/sim.hpp"

namespace dcho {

inline constexpr double kDefaultPingPongWindowS = 1.0;
inline constexpr double kDefaultHistogramBinDb = 1.0;

struct RunMetrics {
  std::string strategy;
  std::uint64_t seed = 0;
  int handover_count = 0;
  int ping_pong_count = 0;
  double mean_sinr_db = 0.0;
  double mean_throughput_bps = 0.0;
  std::vector<double> sinr_samples;
  std::vector<std::pair<double, double>> throughput_series;  // (s, bit/s)
};

/// SN changes and attachments; releases are not handovers.
int count_handovers(std::span<const HandoverEvent> events);

/// SN changes that return to the cell left by the immediately preceding SN
/// change within `window_s`.
int count_ping_pongs(std::span<const HandoverEvent> events,
                     double window_s = kDefaultPingPongWindowS);

struct HistogramBin {
  double low = 0.0;
  std::size_t count = 0;
  friend bool operator==(const HistogramBin&, const HistogramBin&) = default;
};

/// Bins [k w, (k+1) w) spanning the sample range, zero-count bins included.
std::vector<HistogramBin> histogram(std::span<const double> samples,
                                    double bin_width = kDefaultHistogramBinDb);

struct CdfPoint {
  double value = 0.0;
  double fraction = 0.0;
  friend bool operator==(const CdfPoint&, const CdfPoint&) = default;
};

/// Empirical CDF at each distinct sample value.
std::vector<CdfPoint> cdf(std::span<const double> samples);

RunMetrics compute_metrics(const SimOutput& out, double ping_pong_window_s = kDefaultPingPongWindowS);

/// `%.6g`, the rendering used in every CSV.
std::string format_number(double v);

/// Writes timeseries_, sinr_hist_ and sinr_cdf_<strategy>_<seed>.csv into
/// `dir`, creating it if needed. IoError on failure.
void write_run_csv(const std::filesystem::path& dir, const SimOutput& out,
                   const RunMetrics& metrics, double bin_width = kDefaultHistogramBinDb);

/// Writes summary.csv with one row per entry, in order. IoError on failure.
void write_summary_csv(const std::filesystem::path& dir, std::span<const RunMetrics> runs);

}  // namespace dcho

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "dcho/geometry.hpp"
#include "dcho/nci.hpp"

namespace dcho {

inline constexpr double kSpeedOfLight = 299'792'458.0;
inline constexpr double kThermalNoiseDbmPerHz = -174.0;
inline constexpr double kUeNoiseFigureDb = 9.0;
inline constexpr double kMaxSpectralEfficiency = 7.4;  // bit/s/Hz
inline constexpr double kMinLinkDistance = 1.0;        // m

struct GnbConfig {
  Ncgi ncgi;
  GnbType tier = GnbType::Macro;
  Point3 position = Point3::Zero();
  double carrier_hz = 0.0;
  double tx_power_dbm = 0.0;
  double bandwidth_hz = 0.0;
  double resource_share = 1.0;
  double pl_exponent_los = 2.0;
  double pl_exponent_nlos = 2.0;
  double shadow_sigma_db = 0.0;
  double blockage_penalty_db = 0.0;  // per obstacle crossed
};

/// Tier defaults. Position and identity are left zeroed.
GnbConfig default_gnb_config(GnbType tier);

/// Throws ConfigError when a field violates its range.
void validate(const GnbConfig& gnb);

double db_to_linear(double db);
double linear_to_db(double linear);

/// Free-space path loss 20 log10(4 pi d f / c). DomainError when d or f <= 0.
double fspl_db(double distance_m, double carrier_hz);

/// Log-distance loss anchored at the 1 m free-space loss, plus an additive
/// penalty per obstacle. Distances below 1 m are clamped.
double path_loss_db(const GnbConfig& gnb, double distance_m, int blockers);

double rsrp_dbm(const GnbConfig& gnb, const Point3& ue_pos, double shadow_db, int blockers);

double noise_dbm(double bandwidth_hz, double noise_figure_db = kUeNoiseFigureDb);

/// SINR of `all[serving]` given received powers of every gNB. Only gNBs on
/// the serving carrier interfere. ConfigError when `serving` is out of range
/// or the power vector does not match `all`.
double sinr_db(std::size_t serving, std::span<const GnbConfig> all,
               std::span<const double> rx_powers_dbm);

/// Same, locating the serving gNB by NCGI.
double sinr_db(const GnbConfig& serving, std::span<const GnbConfig> all,
               std::span<const double> rx_powers_dbm);

/// Shannon rate on the allotted share of the band, spectral efficiency capped
/// at kMaxSpectralEfficiency.
double throughput_bps(double sinr_db, double bandwidth_hz, double resource_share);

/// Spatially correlated log-normal shadowing, one Gauss-Markov chain per gNB.
/// Each chain keeps a Normal(0, sigma^2) marginal: with delta the distance
/// moved since the previous sample, rho = exp(-delta / decorrelation), and
/// next = rho * prev + sqrt(1 - rho^2) * N(0, sigma).
class ShadowState {
 public:
  ShadowState(std::vector<double> sigmas_db, double decorrelation_m, std::uint64_t seed);

  /// Advances every chain to `ue_pos` and returns the per-gNB values in dB.
  /// The first call draws each value fresh from its marginal.
  std::span<const double> advance(const Point3& ue_pos);

  std::span<const double> values() const { return values_; }
  double decorrelation_m() const { return decorrelation_m_; }

 private:
  std::vector<double> sigmas_;
  std::vector<double> values_;
  double decorrelation_m_;
  std::optional<Point3> last_pos_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> unit_normal_{0.0, 1.0};
};

struct MeasurementFrame {
  double time_s = 0.0;
  std::vector<double> rsrp_dbm;
  std::vector<double> sinr_db;
  std::vector<int> blocked;
};

/// Fills `frame` for a UE at `ue_pos`, reusing its storage.
void measure(std::span<const GnbConfig> gnbs, std::span<const Obstacle> obstacles,
             const Point3& ue_pos, std::span<const double> shadow_db, double time_s,
             MeasurementFrame& frame);

}  // namespace dcho

#include "dcho/radio.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dcho/errors.hpp"

namespace dcho {

GnbConfig default_gnb_config(GnbType tier) {
  GnbConfig g;
  g.tier = tier;
  switch (tier) {
    case GnbType::Macro:
      g.carrier_hz = 2.1e9;
      g.tx_power_dbm = 46.0;
      g.bandwidth_hz = 20e6;
      g.resource_share = 0.1;
      g.pl_exponent_los = 2.9;
      g.pl_exponent_nlos = 3.5;
      g.shadow_sigma_db = 6.0;
      g.blockage_penalty_db = 15.0;
      break;
    case GnbType::SmallSub6:
      g.carrier_hz = 3.5e9;
      g.tx_power_dbm = 30.0;
      g.bandwidth_hz = 100e6;
      g.resource_share = 0.5;
      g.pl_exponent_los = 2.2;
      g.pl_exponent_nlos = 3.1;
      g.shadow_sigma_db = 7.0;
      g.blockage_penalty_db = 15.0;
      break;
    case GnbType::MmWave:
      // 30 dBm conducted plus 15 dB beamforming gain.
      g.carrier_hz = 28e9;
      g.tx_power_dbm = 45.0;
      g.bandwidth_hz = 400e6;
      g.resource_share = 1.0;
      g.pl_exponent_los = 2.0;
      g.pl_exponent_nlos = 3.4;
      g.shadow_sigma_db = 4.0;
      g.blockage_penalty_db = 20.0;
      break;
    case GnbType::Reserved:
      throw ConfigError("no radio defaults for the reserved gNB type");
  }
  return g;
}

void validate(const GnbConfig& g) {
  const auto who = [&] { return std::string("gNB ") + std::to_string(g.ncgi.nci) + ": "; };
  if (!(g.carrier_hz > 0.0)) throw ConfigError(who() + "carrier_hz must be > 0");
  if (!(g.bandwidth_hz > 0.0)) throw ConfigError(who() + "bandwidth_hz must be > 0");
  if (!(g.resource_share > 0.0 && g.resource_share <= 1.0)) {
    throw ConfigError(who() + "resource_share must be in (0, 1]");
  }
  if (!(g.pl_exponent_los >= 0.0) || !(g.pl_exponent_nlos >= 0.0)) {
    throw ConfigError(who() + "path-loss exponents must be >= 0");
  }
  if (!(g.shadow_sigma_db >= 0.0)) throw ConfigError(who() + "shadow_sigma_db must be >= 0");
  if (!std::isfinite(g.tx_power_dbm) || !std::isfinite(g.blockage_penalty_db)) {
    throw ConfigError(who() + "power and penalty must be finite");
  }
  if (!g.position.allFinite()) throw ConfigError(who() + "position must be finite");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

double fspl_db(double distance_m, double carrier_hz) {
  if (!(distance_m > 0.0)) throw DomainError("FSPL distance must be > 0");
  if (!(carrier_hz > 0.0)) throw DomainError("FSPL frequency must be > 0");
  return 20.0 * std::log10(4.0 * std::numbers::pi * distance_m * carrier_hz / kSpeedOfLight);
}

double path_loss_db(const GnbConfig& gnb, double distance_m, int blockers) {
  const double d = std::max(distance_m, kMinLinkDistance);
  const double n = blockers == 0 ? gnb.pl_exponent_los : gnb.pl_exponent_nlos;
  return fspl_db(kMinLinkDistance, gnb.carrier_hz) + 10.0 * n * std::log10(d) +
         blockers * gnb.blockage_penalty_db;
}

double rsrp_dbm(const GnbConfig& gnb, const Point3& ue_pos, double shadow_db, int blockers) {
  return gnb.tx_power_dbm - path_loss_db(gnb, distance_3d(gnb.position, ue_pos), blockers) +
         shadow_db;
}

double noise_dbm(double bandwidth_hz, double noise_figure_db) {
  return kThermalNoiseDbmPerHz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

namespace {

double sinr_from_linear(std::size_t serving, std::span<const GnbConfig> all,
                        std::span<const double> rx_mw) {
  const auto& s = all[serving];
  double interference_mw = 0.0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (i != serving && all[i].carrier_hz == s.carrier_hz) interference_mw += rx_mw[i];
  }
  const double noise_mw = db_to_linear(noise_dbm(s.bandwidth_hz));
  return linear_to_db(rx_mw[serving] / (interference_mw + noise_mw));
}

}  // namespace

double sinr_db(std::size_t serving, std::span<const GnbConfig> all,
               std::span<const double> rx_powers_dbm) {
  if (serving >= all.size()) throw ConfigError("serving gNB is not in the gNB list");
  if (rx_powers_dbm.size() != all.size()) {
    throw ConfigError("received-power vector does not match the gNB list");
  }
  std::vector<double> rx_mw(rx_powers_dbm.size());
  std::transform(rx_powers_dbm.begin(), rx_powers_dbm.end(), rx_mw.begin(), db_to_linear);
  return sinr_from_linear(serving, all, rx_mw);
}

double sinr_db(const GnbConfig& serving, std::span<const GnbConfig> all,
               std::span<const double> rx_powers_dbm) {
  const auto it = std::find_if(all.begin(), all.end(),
                               [&](const GnbConfig& g) { return g.ncgi == serving.ncgi; });
  if (it == all.end()) throw ConfigError("serving gNB is not in the gNB list");
  return sinr_db(static_cast<std::size_t>(it - all.begin()), all, rx_powers_dbm);
}

double throughput_bps(double sinr_db, double bandwidth_hz, double resource_share) {
  const double se = std::min(std::log2(1.0 + db_to_linear(sinr_db)), kMaxSpectralEfficiency);
  return resource_share * bandwidth_hz * se;
}

ShadowState::ShadowState(std::vector<double> sigmas_db, double decorrelation_m,
                         std::uint64_t seed)
    : sigmas_(std::move(sigmas_db)),
      values_(sigmas_.size(), 0.0),
      decorrelation_m_(decorrelation_m),
      rng_(seed) {
  if (!(decorrelation_m_ > 0.0)) throw ConfigError("decorrelation distance must be > 0");
}

std::span<const double> ShadowState::advance(const Point3& ue_pos) {
  if (!last_pos_) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
      values_[i] = sigmas_[i] * unit_normal_(rng_);
    }
  } else {
    const double delta = distance_3d(ue_pos, *last_pos_);
    if (delta > 0.0) {
      const double rho = std::exp(-delta / decorrelation_m_);
      const double innovation = std::sqrt(1.0 - rho * rho);
      for (std::size_t i = 0; i < values_.size(); ++i) {
        values_[i] = rho * values_[i] + innovation * sigmas_[i] * unit_normal_(rng_);
      }
    }
  }
  last_pos_ = ue_pos;
  return values_;
}

void measure(std::span<const GnbConfig> gnbs, std::span<const Obstacle> obstacles,
             const Point3& ue_pos, std::span<const double> shadow_db, double time_s,
             MeasurementFrame& frame) {
  const auto n = gnbs.size();
  frame.time_s = time_s;
  frame.rsrp_dbm.resize(n);
  frame.sinr_db.resize(n);
  frame.blocked.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    frame.blocked[i] = blockage_count(ue_pos, gnbs[i].position, obstacles);
    frame.rsrp_dbm[i] = rsrp_dbm(gnbs[i], ue_pos, shadow_db[i], frame.blocked[i]);
  }
  std::vector<double> rx_mw(n);
  std::transform(frame.rsrp_dbm.begin(), frame.rsrp_dbm.end(), rx_mw.begin(), db_to_linear);
  for (std::size_t i = 0; i < n; ++i) {
    frame.sinr_db[i] = sinr_from_linear(i, gnbs, rx_mw);
  }
}

}  // namespace dcho

#include "dcho/scenario.hpp"

#include <cmath>
#include <string>

#include "dcho/errors.hpp"

namespace dcho {

std::size_t macro_index(const ScenarioConfig& cfg) {
  std::size_t found = cfg.gnbs.size();
  int macros = 0;
  for (std::size_t i = 0; i < cfg.gnbs.size(); ++i) {
    if (cfg.gnbs[i].tier == GnbType::Macro) {
      found = i;
      ++macros;
    }
  }
  if (macros != 1) {
    throw ValidationError("scenario needs exactly one macro gNB, found " + std::to_string(macros));
  }
  return found;
}

std::size_t tick_count(const ScenarioConfig& cfg) {
  return static_cast<std::size_t>(std::llround(cfg.duration_s * 1000.0 / cfg.tick_ms));
}

std::vector<Ncgi> cell_ids(const ScenarioConfig& cfg) {
  std::vector<Ncgi> out;
  out.reserve(cfg.gnbs.size());
  for (const auto& g : cfg.gnbs) out.push_back(g.ncgi);
  return out;
}

void validate(const ScenarioConfig& cfg) {
  if (!(cfg.duration_s >= 0.0) || !std::isfinite(cfg.duration_s)) {
    throw ValidationError("duration_s must be >= 0");
  }
  if (!(cfg.tick_ms > 0.0) || !std::isfinite(cfg.tick_ms)) {
    throw ValidationError("tick_ms must be > 0");
  }
  const double ticks = cfg.duration_s * 1000.0 / cfg.tick_ms;
  if (std::abs(ticks - std::round(ticks)) > 1e-9 * std::max(1.0, ticks)) {
    throw ValidationError("duration_s must be a whole number of ticks");
  }
  if (!(cfg.sn_interruption_ms >= 0.0)) {
    throw ValidationError("sn_interruption_ms must be >= 0");
  }
  if (!(cfg.shadow_decorrelation_m > 0.0)) {
    throw ValidationError("shadow decorrelation distance must be > 0");
  }
  try {
    validate(cfg.ue);
    validate(cfg.hdma);
    for (const auto& g : cfg.gnbs) validate(g);
  } catch (const DomainError& e) {
    throw ValidationError(e.what());
  } catch (const ValidationError&) {
    throw;
  } catch (const ConfigError& e) {
    throw ValidationError(e.what());
  }
  macro_index(cfg);
  for (std::size_t i = 0; i < cfg.gnbs.size(); ++i) {
    const auto& g = cfg.gnbs[i];
    if (g.ncgi.gnb_id_bits != kDefaultGnbIdBits || gnb_type_of(g.ncgi.nci) != g.tier) {
      throw ValidationError("gNB " + std::to_string(i) + ": tier '" +
                            std::string(to_string(g.tier)) + "' disagrees with NCGI type bits");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (cfg.gnbs[j].ncgi == g.ncgi) {
        throw ValidationError("duplicate NCGI at gNB " + std::to_string(j) + " and " +
                              std::to_string(i));
      }
    }
  }
  for (const auto& box : cfg.obstacles) {
    if (!(box.min().array() <= box.max().array()).all()) {
      throw ValidationError("obstacle min corner exceeds max corner");
    }
  }
}

}  // namespace dcho

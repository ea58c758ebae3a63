#pragma once

#include <cstdint>
#include <vector>

#include "dcho/geometry.hpp"
#include "dcho/hdma.hpp"
#include "dcho/radio.hpp"

namespace dcho {

/// Everything a run needs besides the strategy name. Defaults follow the
/// reference highway-crossing setup: 40 s at 60 km/h, 1 ms ticks.
struct ScenarioConfig {
  double duration_s = 40.0;
  double tick_ms = 1.0;
  Trajectory ue{Point3(100.0, 100.0, 1.5), Point3::UnitY(), 60.0};
  HdmaConfig hdma;
  double sn_interruption_ms = 50.0;
  double shadow_decorrelation_m = 20.0;
  std::vector<GnbConfig> gnbs;
  std::vector<Obstacle> obstacles;
  std::uint64_t seed = 1;
};

/// Throws ValidationError on: not exactly one macro gNB, duplicate NCGI,
/// tier disagreeing with the NCGI type bits, negative duration, non-positive
/// tick, a duration that is not a whole number of ticks, or any invalid
/// component.
void validate(const ScenarioConfig& cfg);

/// duration / tick, rounded to the nearest integer.
std::size_t tick_count(const ScenarioConfig& cfg);

/// Index of the single macro gNB; ValidationError if there is not exactly one.
std::size_t macro_index(const ScenarioConfig& cfg);

std::vector<Ncgi> cell_ids(const ScenarioConfig& cfg);

}  // namespace dcho

#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dcho/hdma.hpp"
#include "dcho/radio.hpp"
#include "dcho/scenario.hpp"

namespace dcho {

enum class HandoverKind : std::uint8_t { SnChange, SnRelease, SnAttach };

std::string_view to_string(HandoverKind k) noexcept;

/// Logged when the decision is taken; the new SN starts carrying traffic one
/// interruption window later.
struct HandoverEvent {
  double time_s = 0.0;
  std::size_t tick = 0;
  std::optional<Ncgi> from;
  std::optional<Ncgi> to;
  HandoverKind kind = HandoverKind::SnChange;
  GnbType target_tier = GnbType::Macro;  // Macro for releases
};

struct TickRecord {
  double time_s = 0.0;
  Ncgi mn;
  std::optional<Ncgi> sn;  // SN carrying traffic this tick
  double sinr_db = 0.0;    // SN path when it carries traffic, else MN path
  double mn_throughput_bps = 0.0;
  double sn_throughput_bps = 0.0;
  double throughput_bps = 0.0;  // MN + SN
};

using RsrpMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct SimOutput {
  std::string strategy;
  std::uint64_t seed = 0;
  std::vector<Ncgi> cells;
  std::vector<HandoverEvent> events;
  std::vector<TickRecord> series;
  RsrpMatrix rsrp_dbm;  // one row per tick, one column per gNB
};

/// Starts a handover towards `target`. With a zero interruption the switch is
/// immediate; otherwise the SN path is idle until the window elapses.
/// StateError if a handover is already running or `target` is the current SN.
UeState execute_sn_handover(UeState state, const Ncgi& target, double interruption_ms);

/// Tick-by-tick engine for one (scenario, strategy, seed).
class Simulator {
 public:
  /// Validates the scenario; ConfigError on any violation or unknown strategy.
  Simulator(ScenarioConfig scenario, std::string_view strategy, std::uint64_t seed);

  bool done() const { return tick_ >= ticks_; }
  std::size_t tick() const { return tick_; }
  const UeState& ue() const { return ue_; }
  const MeasurementFrame& frame() const { return frame_; }

  /// Advances one tick: move, measure, progress or decide, record.
  std::optional<HandoverEvent> step();

  /// Moves the accumulated output out; the simulator is spent afterwards.
  SimOutput finish();

 private:
  void attach_initial_sn();
  std::optional<HandoverEvent> apply(const Decision& d, double t);
  void record(double t);

  ScenarioConfig scenario_;
  std::vector<Ncgi> cells_;
  std::unique_ptr<HandoverStrategy> strategy_;
  ShadowState shadow_;
  UeState ue_;
  MeasurementFrame frame_;
  std::size_t mn_index_ = 0;
  std::size_t ticks_ = 0;
  std::size_t tick_ = 0;
  double dt_ms_ = 1.0;
  SimOutput out_;
};

/// Runs to completion. Identical inputs yield bit-identical output.
SimOutput run(const ScenarioConfig& scenario, std::string_view strategy, std::uint64_t seed);

}  // namespace dcho

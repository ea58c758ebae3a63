#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "dcho/geometry.hpp"
#include "dcho/nci.hpp"
#include "dcho/radio.hpp"

namespace dcho {

/// Thresholds shared by every handover decision strategy.
struct HdmaConfig {
  double speed_threshold_kmh = 30.0;
  double hom_db = 3.0;
  double ttt_ms = 200.0;
};

void validate(const HdmaConfig& cfg);

/// Dual-connectivity UE. The master node never changes; the secondary node
/// is optional and, while a handover executes, `sn` is empty and
/// `pending_sn` names the target.
struct UeState {
  Point3 position = Point3::Zero();
  double speed_kmh = 0.0;
  Ncgi mn;
  std::optional<Ncgi> sn;
  std::optional<Ncgi> pending_sn;
  double sn_handover_remaining_ms = 0.0;

  bool handover_in_progress() const { return sn_handover_remaining_ms > 0.0; }
};

/// Time-to-trigger accounting for one target.
struct TttTimer {
  std::optional<Ncgi> target;
  double elapsed_ms = 0.0;
  bool armed = false;
};

/// Advances `timer` by one tick. `elapsed_ms` accumulates while the entering
/// condition holds and drops to zero the first tick it fails; fires once
/// elapsed >= ttt_ms.
std::pair<TttTimer, bool> ttt_update(TttTimer timer, bool condition_holds, double dt_ms,
                                     double ttt_ms);

/// Like ttt_update but restarts the count whenever `target` differs from the
/// target the timer was tracking.
bool ttt_track(TttTimer& timer, const Ncgi& target, bool condition_holds, double dt_ms,
               double ttt_ms);

/// A3 entering condition, strict: target > serving + hom.
constexpr bool a3_condition(double target_rsrp_dbm, double serving_rsrp_dbm, double hom_db) {
  return target_rsrp_dbm > serving_rsrp_dbm + hom_db;
}

struct NoAction {
  friend bool operator==(const NoAction&, const NoAction&) = default;
};
struct HandoverTo {
  Ncgi target;
  friend bool operator==(const HandoverTo&, const HandoverTo&) = default;
};
/// Drop the secondary node and continue on the master node alone.
struct ReleaseSn {
  friend bool operator==(const ReleaseSn&, const ReleaseSn&) = default;
};
using Decision = std::variant<NoAction, HandoverTo, ReleaseSn>;

struct Candidate {
  Ncgi ncgi;
  std::size_t index = 0;  // position in the gNB list
  double rsrp_dbm = 0.0;
};

/// Best first: descending RSRP, ties broken by the lower raw NCI.
using CandidateSet = std::vector<Candidate>;

/// Which gNB types a strategy may consider.
using TypeFilter = bool (*)(GnbType);

bool any_sn_tier(GnbType t);      // Macro, SmallSub6, MmWave
bool no_mmwave_tier(GnbType t);   // Macro, SmallSub6

/// Candidates from `frame` whose type (read from the NCI bits) passes
/// `admit`. The gNB currently serving the UE is excluded: the SN when one is
/// attached, otherwise the MN.
CandidateSet build_candidates(const UeState& ue, const MeasurementFrame& frame,
                              std::span<const Ncgi> cells, TypeFilter admit);

/// RSRP of the SN when attached, otherwise of the MN.
double serving_rsrp_dbm(const UeState& ue, const MeasurementFrame& frame,
                        std::span<const Ncgi> cells);

/// Index of `id` in `cells`; ConfigError when absent.
std::size_t index_of(std::span<const Ncgi> cells, const Ncgi& id);

/// Strongest admissible candidate against the serving RSRP through A3 and
/// TTT. A fired macro target maps to ReleaseSn.
Decision a3_decide(const UeState& ue, const MeasurementFrame& frame,
                   std::span<const Ncgi> cells, const HdmaConfig& cfg, TttTimer& timer,
                   double dt_ms, TypeFilter admit);

Decision a3rsrp_decide(const UeState& ue, const MeasurementFrame& frame,
                       std::span<const Ncgi> cells, const HdmaConfig& cfg, TttTimer& timer,
                       double dt_ms);

/// Above the speed threshold (strict) the UE stays on the MN: an attached SN
/// is released and none is ever added. Otherwise identical to A3RSRP.
Decision speed_based_decide(const UeState& ue, const MeasurementFrame& frame,
                            std::span<const Ncgi> cells, const HdmaConfig& cfg, TttTimer& timer,
                            double dt_ms);

/// NCI-based decision. At or above the speed threshold only gNBs whose type
/// bits read 00 or 01 are candidates; mmWave (10) and reserved (11) cells are
/// skipped. Below the threshold it is A3RSRP.
Decision nci_based_decide(const UeState& ue, const MeasurementFrame& frame,
                          std::span<const Ncgi> cells, const HdmaConfig& cfg, TttTimer& timer,
                          double dt_ms);

/// Pluggable strategy owning its timer state.
class HandoverStrategy {
 public:
  explicit HandoverStrategy(HdmaConfig cfg) : cfg_(cfg) {}
  virtual ~HandoverStrategy() = default;

  virtual std::string_view name() const = 0;
  virtual Decision decide(const UeState& ue, const MeasurementFrame& frame,
                          std::span<const Ncgi> cells, double dt_ms) = 0;
  /// Whether a cell of type `t` may become the SN of a UE moving at `speed_kmh`.
  virtual bool admits_sn(GnbType t, double speed_kmh) const = 0;

  void reset_timer() { timer_ = TttTimer{}; }
  const HdmaConfig& config() const { return cfg_; }
  const TttTimer& timer() const { return timer_; }

 protected:
  HdmaConfig cfg_;
  TttTimer timer_;
};

inline constexpr std::string_view kStrategyNames[] = {"nci", "a3rsrp", "speed"};

/// `nci`, `a3rsrp` or `speed`; ConfigError otherwise.
std::unique_ptr<HandoverStrategy> make_strategy(std::string_view name, const HdmaConfig& cfg);

}  // namespace dcho

#include "dcho/hdma.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dcho/errors.hpp"

namespace dcho {

void validate(const HdmaConfig& cfg) {
  if (!(cfg.speed_threshold_kmh >= 0.0)) throw ConfigError("speed_threshold_kmh must be >= 0");
  if (!std::isfinite(cfg.hom_db)) throw ConfigError("hom_db must be finite");
  if (!(cfg.ttt_ms >= 0.0)) throw ConfigError("ttt_ms must be >= 0");
}

std::pair<TttTimer, bool> ttt_update(TttTimer timer, bool condition_holds, double dt_ms,
                                     double ttt_ms) {
  if (!condition_holds) {
    timer.elapsed_ms = 0.0;
    timer.armed = false;
    return {timer, false};
  }
  timer.armed = true;
  timer.elapsed_ms += dt_ms;
  return {timer, timer.elapsed_ms >= ttt_ms};
}

bool ttt_track(TttTimer& timer, const Ncgi& target, bool condition_holds, double dt_ms,
               double ttt_ms) {
  if (timer.target != target) {
    timer = TttTimer{target, 0.0, false};
  }
  auto [next, fired] = ttt_update(timer, condition_holds, dt_ms, ttt_ms);
  timer = fired ? TttTimer{} : next;
  return fired;
}

bool any_sn_tier(GnbType t) { return t != GnbType::Reserved; }

bool no_mmwave_tier(GnbType t) { return t == GnbType::Macro || t == GnbType::SmallSub6; }

std::size_t index_of(std::span<const Ncgi> cells, const Ncgi& id) {
  const auto it = std::find(cells.begin(), cells.end(), id);
  if (it == cells.end()) throw ConfigError("NCGI not present in the gNB list");
  return static_cast<std::size_t>(it - cells.begin());
}

double serving_rsrp_dbm(const UeState& ue, const MeasurementFrame& frame,
                        std::span<const Ncgi> cells) {
  return frame.rsrp_dbm[index_of(cells, ue.sn ? *ue.sn : ue.mn)];
}

CandidateSet build_candidates(const UeState& ue, const MeasurementFrame& frame,
                              std::span<const Ncgi> cells, TypeFilter admit) {
  const Ncgi& serving = ue.sn ? *ue.sn : ue.mn;
  CandidateSet out;
  out.reserve(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] == serving) continue;
    // Type comes from the identity bits only.
    if (!admit(gnb_type_of(cells[i].nci))) continue;
    out.push_back({cells[i], i, frame.rsrp_dbm[i]});
  }
  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    if (a.rsrp_dbm != b.rsrp_dbm) return a.rsrp_dbm > b.rsrp_dbm;
    return a.ncgi.nci < b.ncgi.nci;
  });
  return out;
}

Decision a3_decide(const UeState& ue, const MeasurementFrame& frame,
                   std::span<const Ncgi> cells, const HdmaConfig& cfg, TttTimer& timer,
                   double dt_ms, TypeFilter admit) {
  const auto candidates = build_candidates(ue, frame, cells, admit);
  if (candidates.empty()) {
    timer = TttTimer{};
    return NoAction{};
  }
  const Candidate& best = candidates.front();
  const bool entering = a3_condition(best.rsrp_dbm, serving_rsrp_dbm(ue, frame, cells), cfg.hom_db);
  if (!ttt_track(timer, best.ncgi, entering, dt_ms, cfg.ttt_ms)) return NoAction{};
  // The MN already carries the UE; "handing over" to it means going MN-only.
  if (best.ncgi == ue.mn) return ReleaseSn{};
  return HandoverTo{best.ncgi};
}

Decision a3rsrp_decide(const UeState& ue, const MeasurementFrame& frame,
                       std::span<const Ncgi> cells, const HdmaConfig& cfg, TttTimer& timer,
                       double dt_ms) {
  return a3_decide(ue, frame, cells, cfg, timer, dt_ms, any_sn_tier);
}

Decision speed_based_decide(const UeState& ue, const MeasurementFrame& frame,
                            std::span<const Ncgi> cells, const HdmaConfig& cfg, TttTimer& timer,
                            double dt_ms) {
  if (ue.speed_kmh > cfg.speed_threshold_kmh) {
    timer = TttTimer{};
    if (ue.sn) return ReleaseSn{};
    return NoAction{};
  }
  return a3rsrp_decide(ue, frame, cells, cfg, timer, dt_ms);
}

Decision nci_based_decide(const UeState& ue, const MeasurementFrame& frame,
                          std::span<const Ncgi> cells, const HdmaConfig& cfg, TttTimer& timer,
                          double dt_ms) {
  if (ue.speed_kmh >= cfg.speed_threshold_kmh) {
    return a3_decide(ue, frame, cells, cfg, timer, dt_ms, no_mmwave_tier);
  }
  return a3rsrp_decide(ue, frame, cells, cfg, timer, dt_ms);
}

namespace {

class A3RsrpStrategy final : public HandoverStrategy {
 public:
  using HandoverStrategy::HandoverStrategy;
  std::string_view name() const override { return "a3rsrp"; }
  Decision decide(const UeState& ue, const MeasurementFrame& frame, std::span<const Ncgi> cells,
                  double dt_ms) override {
    return a3rsrp_decide(ue, frame, cells, cfg_, timer_, dt_ms);
  }
  bool admits_sn(GnbType t, double) const override {
    return t == GnbType::SmallSub6 || t == GnbType::MmWave;
  }
};

class SpeedBasedStrategy final : public HandoverStrategy {
 public:
  using HandoverStrategy::HandoverStrategy;
  std::string_view name() const override { return "speed"; }
  Decision decide(const UeState& ue, const MeasurementFrame& frame, std::span<const Ncgi> cells,
                  double dt_ms) override {
    return speed_based_decide(ue, frame, cells, cfg_, timer_, dt_ms);
  }
  bool admits_sn(GnbType t, double speed_kmh) const override {
    if (speed_kmh > cfg_.speed_threshold_kmh) return false;
    return t == GnbType::SmallSub6 || t == GnbType::MmWave;
  }
};

class NciBasedStrategy final : public HandoverStrategy {
 public:
  using HandoverStrategy::HandoverStrategy;
  std::string_view name() const override { return "nci"; }
  Decision decide(const UeState& ue, const MeasurementFrame& frame, std::span<const Ncgi> cells,
                  double dt_ms) override {
    return nci_based_decide(ue, frame, cells, cfg_, timer_, dt_ms);
  }
  bool admits_sn(GnbType t, double speed_kmh) const override {
    if (speed_kmh >= cfg_.speed_threshold_kmh) return t == GnbType::SmallSub6;
    return t == GnbType::SmallSub6 || t == GnbType::MmWave;
  }
};

}  // namespace

std::unique_ptr<HandoverStrategy> make_strategy(std::string_view name, const HdmaConfig& cfg) {
  if (name == "nci") return std::make_unique<NciBasedStrategy>(cfg);
  if (name == "a3rsrp") return std::make_unique<A3RsrpStrategy>(cfg);
  if (name == "speed") return std::make_unique<SpeedBasedStrategy>(cfg);
  throw ConfigError("unknown HDMA '" + std::string(name) + "' (expected nci, a3rsrp or speed)");
}

}  // namespace dcho

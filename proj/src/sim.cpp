#include "dcho/sim.hpp"

#include <string>

#include "dcho/errors.hpp"

namespace dcho {

namespace {

constexpr double kTimeEpsilonMs = 1e-9;

std::vector<double> shadow_sigmas(const ScenarioConfig& s) {
  std::vector<double> out;
  out.reserve(s.gnbs.size());
  for (const auto& g : s.gnbs) out.push_back(g.shadow_sigma_db);
  return out;
}

}  // namespace

std::string_view to_string(HandoverKind k) noexcept {
  switch (k) {
    case HandoverKind::SnChange:
      return "sn_change";
    case HandoverKind::SnRelease:
      return "sn_release";
    case HandoverKind::SnAttach:
      return "sn_attach";
  }
  return "unknown";
}

UeState execute_sn_handover(UeState state, const Ncgi& target, double interruption_ms) {
  if (state.handover_in_progress()) throw StateError("SN handover already in progress");
  if (state.sn && *state.sn == target) throw StateError("handover target is the current SN");
  if (target == state.mn) throw StateError("the MN cannot become the SN");
  if (interruption_ms <= 0.0) {
    state.sn = target;
    state.pending_sn.reset();
    state.sn_handover_remaining_ms = 0.0;
    return state;
  }
  state.sn.reset();
  state.pending_sn = target;
  state.sn_handover_remaining_ms = interruption_ms;
  return state;
}

Simulator::Simulator(ScenarioConfig scenario, std::string_view strategy, std::uint64_t seed)
    : scenario_((validate(scenario), std::move(scenario))),
      cells_(cell_ids(scenario_)),
      strategy_(make_strategy(strategy, scenario_.hdma)),
      shadow_(shadow_sigmas(scenario_), scenario_.shadow_decorrelation_m, seed),
      mn_index_(macro_index(scenario_)),
      ticks_(tick_count(scenario_)),
      dt_ms_(scenario_.tick_ms) {
  ue_.position = scenario_.ue.start;
  ue_.speed_kmh = scenario_.ue.speed_kmh;
  ue_.mn = cells_[mn_index_];
  out_.strategy = std::string(strategy_->name());
  out_.seed = seed;
  out_.cells = cells_;
  out_.series.reserve(ticks_);
  out_.rsrp_dbm.resize(static_cast<Eigen::Index>(ticks_), static_cast<Eigen::Index>(cells_.size()));
}

void Simulator::attach_initial_sn() {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (i == mn_index_) continue;
    if (!strategy_->admits_sn(gnb_type_of(cells_[i].nci), ue_.speed_kmh)) continue;
    if (!best || frame_.rsrp_dbm[i] > frame_.rsrp_dbm[*best] ||
        (frame_.rsrp_dbm[i] == frame_.rsrp_dbm[*best] && cells_[i].nci < cells_[*best].nci)) {
      best = i;
    }
  }
  if (best) ue_.sn = cells_[*best];
}

std::optional<HandoverEvent> Simulator::apply(const Decision& d, double t) {
  if (const auto* ho = std::get_if<HandoverTo>(&d)) {
    HandoverEvent ev;
    ev.time_s = t;
    ev.tick = tick_;
    ev.from = ue_.sn;
    ev.to = ho->target;
    ev.kind = ue_.sn ? HandoverKind::SnChange : HandoverKind::SnAttach;
    ev.target_tier = gnb_type_of(ho->target.nci);
    ue_ = execute_sn_handover(ue_, ho->target, scenario_.sn_interruption_ms);
    strategy_->reset_timer();
    return ev;
  }
  if (std::holds_alternative<ReleaseSn>(d) && ue_.sn) {
    HandoverEvent ev;
    ev.time_s = t;
    ev.tick = tick_;
    ev.from = ue_.sn;
    ev.kind = HandoverKind::SnRelease;
    ev.target_tier = GnbType::Macro;
    ue_.sn.reset();
    strategy_->reset_timer();
    return ev;
  }
  return std::nullopt;
}

void Simulator::record(double t) {
  TickRecord rec;
  rec.time_s = t;
  rec.mn = ue_.mn;
  rec.sn = ue_.sn;
  const auto& mn = scenario_.gnbs[mn_index_];
  rec.mn_throughput_bps =
      throughput_bps(frame_.sinr_db[mn_index_], mn.bandwidth_hz, mn.resource_share);
  rec.sinr_db = frame_.sinr_db[mn_index_];
  if (ue_.sn) {
    const auto i = index_of(cells_, *ue_.sn);
    const auto& sn = scenario_.gnbs[i];
    rec.sinr_db = frame_.sinr_db[i];
    rec.sn_throughput_bps = throughput_bps(frame_.sinr_db[i], sn.bandwidth_hz, sn.resource_share);
  }
  rec.throughput_bps = rec.mn_throughput_bps + rec.sn_throughput_bps;
  out_.rsrp_dbm.row(static_cast<Eigen::Index>(tick_)) =
      Eigen::Map<const Eigen::RowVectorXd>(frame_.rsrp_dbm.data(),
                                           static_cast<Eigen::Index>(frame_.rsrp_dbm.size()));
  out_.series.push_back(rec);
}

std::optional<HandoverEvent> Simulator::step() {
  if (done()) throw StateError("simulation already complete");
  const double t = static_cast<double>(tick_) * dt_ms_ / 1000.0;

  ue_.position = position_at(scenario_.ue, t);
  measure(scenario_.gnbs, scenario_.obstacles, ue_.position, shadow_.advance(ue_.position), t,
          frame_);
  if (tick_ == 0) attach_initial_sn();

  std::optional<HandoverEvent> event;
  if (ue_.handover_in_progress()) {
    ue_.sn_handover_remaining_ms -= dt_ms_;
    if (ue_.sn_handover_remaining_ms <= kTimeEpsilonMs) {
      ue_.sn_handover_remaining_ms = 0.0;
      ue_.sn = ue_.pending_sn;
      ue_.pending_sn.reset();
      strategy_->reset_timer();
    }
  } else {
    event = apply(strategy_->decide(ue_, frame_, cells_, dt_ms_), t);
    if (event) out_.events.push_back(*event);
  }

  record(t);
  ++tick_;
  return event;
}

SimOutput Simulator::finish() { return std::move(out_); }

SimOutput run(const ScenarioConfig& scenario, std::string_view strategy, std::uint64_t seed) {
  Simulator sim(scenario, strategy, seed);
  while (!sim.done()) sim.step();
  return sim.finish();
}

}  // namespace dcho

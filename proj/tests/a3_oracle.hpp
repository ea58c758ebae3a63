#pragma once

// Stand-alone replay of the three handover strategies over a recorded RSRP
// matrix. Deliberately shares no code with the decision module: it reads the
// tier straight from the NCI bits and re-derives every TTT window by looking
// back over the raw samples instead of keeping a running timer.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcho/sim.hpp"

namespace oracle {

struct Event {
  std::size_t tick = 0;
  int kind = 0;  // 0 change, 1 release, 2 attach
  int from = -1;
  int to = -1;
  friend bool operator==(const Event&, const Event&) = default;
};

struct Params {
  std::string strategy;
  double speed_kmh = 0;
  double threshold_kmh = 30;
  double hom_db = 3;
  double ttt_ms = 200;
  double tick_ms = 1;
  double interruption_ms = 50;
};

inline int top_bits(std::uint64_t nci) { return static_cast<int>((nci >> 34) & 3); }

inline std::vector<Event> replay(const dcho::SimOutput& out, const Params& p) {
  const auto& rsrp = out.rsrp_dbm;
  const int n = static_cast<int>(out.cells.size());
  const auto ticks = static_cast<std::size_t>(rsrp.rows());
  int mn = -1;
  for (int i = 0; i < n; ++i) {
    if (top_bits(out.cells[i].nci) == 0) mn = i;
  }

  const bool fast_speed = p.strategy == "speed" && p.speed_kmh > p.threshold_kmh;
  const bool fast_nci = p.strategy == "nci" && p.speed_kmh >= p.threshold_kmh;
  const auto allowed = [&](int i) {
    const int t = top_bits(out.cells[i].nci);
    if (t == 3) return false;
    if (fast_nci && t == 2) return false;
    return true;
  };

  const long window = std::max(1L, static_cast<long>(std::ceil(p.ttt_ms / p.tick_ms - 1e-9)));
  const long interruption = std::lround(p.interruption_ms / p.tick_ms);

  std::optional<int> sn;
  std::optional<int> pending;
  long remaining = 0;
  long window_start = 0;
  std::vector<Event> events;

  // Initial attachment: strongest admissible non-macro cell at tick 0.
  if (ticks > 0 && !fast_speed) {
    for (int i = 0; i < n; ++i) {
      if (i == mn || !allowed(i)) continue;
      if (!sn || rsrp(0, i) > rsrp(0, *sn) ||
          (rsrp(0, i) == rsrp(0, *sn) && out.cells[i].nci < out.cells[*sn].nci)) {
        sn = i;
      }
    }
  }

  const auto best_at = [&](long k, int serving) -> int {
    int best = -1;
    for (int i = 0; i < n; ++i) {
      if (i == serving || !allowed(i)) continue;
      if (best < 0 || rsrp(k, i) > rsrp(k, best) ||
          (rsrp(k, i) == rsrp(k, best) && out.cells[i].nci < out.cells[best].nci)) {
        best = i;
      }
    }
    return best;
  };

  for (long k = 0; k < static_cast<long>(ticks); ++k) {
    if (remaining > 0) {
      if (--remaining == 0) {
        sn = pending;
        pending.reset();
        window_start = k + 1;
      }
      continue;
    }
    if (fast_speed) {
      if (sn) {
        events.push_back({static_cast<std::size_t>(k), 1, *sn, -1});
        sn.reset();
        window_start = k + 1;
      }
      continue;
    }
    if (k - window + 1 < window_start) continue;
    const int serving = sn ? *sn : mn;
    const int b = best_at(k, serving);
    if (b < 0) continue;
    bool held = true;
    for (long j = k - window + 1; j <= k && held; ++j) {
      held = best_at(j, serving) == b && rsrp(j, b) > rsrp(j, serving) + p.hom_db;
    }
    if (!held) continue;
    if (b == mn) {
      events.push_back({static_cast<std::size_t>(k), 1, *sn, -1});
      sn.reset();
    } else {
      events.push_back({static_cast<std::size_t>(k), sn ? 0 : 2, sn ? *sn : -1, b});
      if (interruption == 0) {
        sn = b;
      } else {
        sn.reset();
        pending = b;
        remaining = interruption;
      }
    }
    window_start = k + 1;
  }
  return events;
}

/// Engine events in the oracle's representation.
inline std::vector<Event> engine_events(const dcho::SimOutput& out) {
  const auto idx = [&](const std::optional<dcho::Ncgi>& id) {
    if (!id) return -1;
    for (std::size_t i = 0; i < out.cells.size(); ++i) {
      if (out.cells[i] == *id) return static_cast<int>(i);
    }
    return -2;
  };
  std::vector<Event> v;
  for (const auto& e : out.events) {
    const int kind = e.kind == dcho::HandoverKind::SnChange    ? 0
                     : e.kind == dcho::HandoverKind::SnRelease ? 1
                                                               : 2;
    v.push_back({e.tick, kind, idx(e.from), idx(e.to)});
  }
  return v;
}

inline Params params_for(const dcho::ScenarioConfig& cfg, const std::string& strategy) {
  return Params{strategy,        cfg.ue.speed_kmh, cfg.hdma.speed_threshold_kmh, cfg.hdma.hom_db,
                cfg.hdma.ttt_ms, cfg.tick_ms,      cfg.sn_interruption_ms};
}

}  // namespace oracle

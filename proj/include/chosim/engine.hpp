#pragma once

#include "chosim/config.hpp"
#include "chosim/deployment.hpp"
#include "chosim/events.hpp"
#include "chosim/kpi.hpp"

namespace chosim {

struct SimResult {
    KpiReport report;
    EventLog log;
};

/// Optional per-step debug sinks. CSV headers are written by the engine.
struct RunHooks {
    std::ostream* rsrp_trace = nullptr;  // time_ms,ue,cell,beam,raw_dbm,filtered_dbm
    std::ostream* trajectory = nullptr;  // time_ms,ue,x,y
};

Layout layout_from_config(const SimConfig& cfg);

/// Fixed-step deterministic run. Per step and per UE: motion, measurement
/// (shadowing, per-beam RSRP, L3 filtering), pending-update commits,
/// candidate maintenance, MR triggering, execution check and RA progression.
/// `shared_layout` may pass a prebuilt layout (must match cfg); sweeps use it
/// to share the immutable geometry across points.
SimResult run_simulation(const SimConfig& cfg, const Layout* shared_layout = nullptr,
                         const RunHooks& hooks = {});

}  // namespace chosim

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "chosim/events.hpp"

namespace chosim {

/// Random-access latency components (ms). Rows 1-3 apply to CFRA, all seven
/// to CBRA.
struct LatencyComponent {
    std::string name;
    double min_ms = 0.0;
    double avg_ms = 0.0;
};

struct LatencyTable {
    std::array<LatencyComponent, 7> components;

    static LatencyTable defaults();

    double cfra_min_ms() const;
    double cfra_avg_ms() const;
    double cbra_min_ms() const;
    double cbra_avg_ms() const;
};

struct KpiAccumulator {
    long n_cbra = 0;
    long n_cfra = 0;
    long n_hof = 0;
    long n_update = 0;
    long n_pp = 0;
    int n_ues = 0;
    double sim_time_s = 0.0;

    long n_handovers() const { return n_cbra + n_cfra; }
};

/// Counters recomputed from an event log (the replay check).
KpiAccumulator accumulate_from_log(const EventLog& log, int n_ues, double sim_time_s);

/// CBRA handovers as a percentage of all handovers. nullopt when there were
/// no handovers at all (explicit sentinel, never silently 0).
std::optional<double> cbra_rate_pct(long n_cbra, long n_cfra);

/// Average handover delay: r_cbra*(ho_cfra + n*d_cbra_avg) + (1-r_cbra)*ho_cfra.
double avg_ho_delay_ms(double r_cbra_fraction, int n_retx, double ho_cfra_ms,
                       double d_cbra_avg_ms);

/// Events per UE per minute.
double normalize_rate(long count, int n_ues, double sim_time_s);

struct KpiReport {
    std::optional<double> r_cbra_pct;  // nullopt = "no handovers" marker
    double hof_rate_per_ue_min = 0.0;
    double update_rate_per_ue_min = 0.0;
    double pp_rate_per_ue_min = 0.0;
    std::vector<int> n_values;
    std::vector<std::optional<double>> d_ho_ms;  // one per n, nullopt when no handovers
    KpiAccumulator raw;
};

KpiReport build_report(const KpiAccumulator& acc, const LatencyTable& latency,
                       const std::vector<int>& n_values, double ho_cfra_ms);

}  // namespace chosim

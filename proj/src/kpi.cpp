#include "chosim/kpi.hpp"

#include <stdexcept>

namespace chosim {

LatencyTable LatencyTable::defaults() {
    return LatencyTable{{{
        {"ra_scheduling_period", 0.5, 2.5},
        {"preamble_transmission", 1.0, 1.0},
        {"preamble_detection_and_rar", 3.0, 5.0},
        {"ue_processing_ul_grant", 5.0, 5.0},
        {"msg3_transmission", 1.0, 1.0},
        {"bs_processing", 4.0, 4.0},
        {"contention_resolution", 1.0, 1.0},
    }}};
}

double LatencyTable::cfra_min_ms() const {
    return components[0].min_ms + components[1].min_ms + components[2].min_ms;
}

double LatencyTable::cfra_avg_ms() const {
    return components[0].avg_ms + components[1].avg_ms + components[2].avg_ms;
}

double LatencyTable::cbra_min_ms() const {
    double s = 0.0;
    for (const auto& c : components) s += c.min_ms;
    return s;
}

double LatencyTable::cbra_avg_ms() const {
    double s = 0.0;
    for (const auto& c : components) s += c.avg_ms;
    return s;
}

KpiAccumulator accumulate_from_log(const EventLog& log, int n_ues, double sim_time_s) {
    KpiAccumulator acc;
    acc.n_ues = n_ues;
    acc.sim_time_s = sim_time_s;
    for (const Event& e : log) {
        switch (e.type) {
            case EventType::Cbra: ++acc.n_cbra; break;
            case EventType::Cfra: ++acc.n_cfra; break;
            case EventType::Hof: ++acc.n_hof; break;
            case EventType::UpdateCommit: ++acc.n_update; break;
            case EventType::Pp: ++acc.n_pp; break;
            default: break;
        }
    }
    return acc;
}

std::optional<double> cbra_rate_pct(long n_cbra, long n_cfra) {
    if (n_cbra < 0 || n_cfra < 0) throw std::invalid_argument("negative handover count");
    const long total = n_cbra + n_cfra;
    if (total == 0) return std::nullopt;
    return 100.0 * static_cast<double>(n_cbra) / static_cast<double>(total);
}

double avg_ho_delay_ms(double r_cbra_fraction, int n_retx, double ho_cfra_ms,
                       double d_cbra_avg_ms) {
    if (r_cbra_fraction < 0.0 || r_cbra_fraction > 1.0)
        throw std::invalid_argument("r_cbra must be in [0, 1]");
    if (n_retx < 0) throw std::invalid_argument("n must be >= 0");
    return r_cbra_fraction * (ho_cfra_ms + n_retx * d_cbra_avg_ms) +
           (1.0 - r_cbra_fraction) * ho_cfra_ms;
}

double normalize_rate(long count, int n_ues, double sim_time_s) {
    if (n_ues <= 0 || sim_time_s <= 0.0)
        throw std::invalid_argument("normalize_rate requires n_ues > 0 and sim_time > 0");
    return static_cast<double>(count) / (static_cast<double>(n_ues) * sim_time_s / 60.0);
}

KpiReport build_report(const KpiAccumulator& acc, const LatencyTable& latency,
                       const std::vector<int>& n_values, double ho_cfra_ms) {
    KpiReport report;
    report.raw = acc;
    report.r_cbra_pct = cbra_rate_pct(acc.n_cbra, acc.n_cfra);
    report.hof_rate_per_ue_min = normalize_rate(acc.n_hof, acc.n_ues, acc.sim_time_s);
    report.update_rate_per_ue_min = normalize_rate(acc.n_update, acc.n_ues, acc.sim_time_s);
    report.pp_rate_per_ue_min = normalize_rate(acc.n_pp, acc.n_ues, acc.sim_time_s);
    report.n_values = n_values;
    for (int n : n_values) {
        if (report.r_cbra_pct.has_value()) {
            report.d_ho_ms.push_back(avg_ho_delay_ms(*report.r_cbra_pct / 100.0, n,
                                                     ho_cfra_ms, latency.cbra_avg_ms()));
        } else {
            report.d_ho_ms.push_back(std::nullopt);
        }
    }
    return report;
}

}  // namespace chosim
